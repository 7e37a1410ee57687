"""Exact crossing analysis for tightened curves.

Tight representatives may touch cone points and share saddle connections;
whether strands actually cross is decided combinatorially: rays at a vertex
are ordered by exact angle, and strands leaving along the same germ are
ordered by following them to their first divergence.  The same machinery
checks embeddedness of a single class, orders parallel strands on a shared
connection, and counts geometric intersection numbers of two classes.
"""

import warnings
from fractions import Fraction

from .angles import AngleDatum
from .errors import IdenticalClass, NotSimple
from .geom import chart_apply, corridor_portals, develop_corridor
from .linalg import cross, dot, smul, vneg, vsub

_L = "L"
_R = "R"


class _Strands:
    """Chord instances and vertex visits of one or two representatives."""

    def __init__(self, surface, model, reps):
        self.surface = surface
        self.model = model
        self.chords = []      # (rep_id, chords tuple, anchors tuple)
        for rid, rep in enumerate(reps):
            if rep.kind == "path":
                self.chords.append((rid, rep.chords, rep.anchors))
            else:
                ch, an = rep.boundaries[0]
                self.chords.append((rid, ch, an))
        self._pos_cache = {}

    # -- tokens ------------------------------------------------------------
    # a token is (rep_id, chord_index, forward_flag): the germ of the chord
    # pointed away from its anchor (forward: away from the start anchor).

    def token_ray(self, tok):
        rid, i, fw = tok
        _, chords, _ = self.chords[rid]
        ch = chords[i]
        if fw:
            return ch.start_corner, ch.vec
        return ch.end_corner, vneg(ch.vec_end())

    def token_vertex(self, tok):
        c, _ = self.token_ray(tok)
        return self.surface.corner_class(c)

    def continuation(self, tok):
        """The token of the next germ when walking away along ``tok``."""
        rid, i, fw = tok
        _, chords, _ = self.chords[rid]
        n = len(chords)
        if fw:
            return (rid, (i + 1) % n, True)
        return (rid, (i - 1) % n, False)

    def angular(self, tok):
        if tok in self._pos_cache:
            return self._pos_cache[tok]
        c, w = self.token_ray(tok)
        pos = _ray_position(self.surface, self.model, c, w)
        self._pos_cache[tok] = pos
        return pos

    def cmp(self, ta, tb):
        """Strict order of two germs at a common vertex."""
        if ta == tb:
            return 0
        pa, pb = self.angular(ta), self.angular(tb)
        c = pa.cmp(pb)
        if c != 0:
            return c
        return self._diverge(ta, tb)

    def _diverge(self, ta, tb):
        total = sum(len(ch) for _, ch, _ in self.chords)
        a, b = ta, tb
        for _ in range(2 * total + 2):
            a = self.continuation(a)
            b = self.continuation(b)
            back = self._back_position(a)
            pa, pb = self.angular(a), self.angular(b)
            c = pa.cmp(pb)
            if c == 0:
                continue
            ab = pa.cmp(back)
            bb = pb.cmp(back)
            if ab == 0 or bb == 0:
                raise AssertionError("geodesic germ backtracks onto itself")
            if ab > 0 and bb > 0:
                return c
            if ab < 0 and bb < 0:
                return c
            # exactly one is above the back ray; that one turns less ccw
            return -1 if ab > 0 else 1
        if ta[0] == tb[0]:
            raise NotSimple("representative repeats a full cycle")
        raise IdenticalClass("the two classes have identical representatives")

    def _back_position(self, tok):
        """Angular position of the ray pointing back along the previous germ."""
        rid, i, fw = tok
        _, chords, _ = self.chords[rid]
        n = len(chords)
        if fw:
            prev = chords[(i - 1) % n]
            c, w = prev.end_corner, vneg(prev.vec_end())
        else:
            nxt = chords[(i + 1) % n]
            c, w = nxt.start_corner, nxt.vec
        return _ray_position(self.surface, self.model, c, w)

    # -- visits --------------------------------------------------------------

    def visits(self, rid):
        """Per anchor: (vertex class, in-token, out-token)."""
        _, chords, anchors = self.chords[rid]
        n = len(chords)
        out = []
        for i in range(n):
            v = self.surface.corner_class(anchors[i].c_in)
            tok_in = (rid, (i - 1) % n, False)
            tok_out = (rid, i, True)
            out.append((v, tok_in, tok_out))
        return out

    def cyclic_between(self, s, x, e):
        """True when walking ccw from ``s`` meets ``x`` strictly before ``e``."""
        cs = self.cmp(s, x)
        cx = self.cmp(x, e)
        ce = self.cmp(e, s)
        if cs == 0 or cx == 0 or ce == 0:
            raise AssertionError("cyclic order of coincident germs")
        sx = cs < 0
        xe = cx < 0
        es = ce < 0
        return (sx and xe) or (es and sx) or (xe and es)

    def interleaved(self, va, vb):
        """Whether two visits at one vertex cross after micro-resolution."""
        _, a1, a2 = va
        _, b1, b2 = vb
        in1 = self.cyclic_between(a1, b1, a2)
        in2 = self.cyclic_between(a1, b2, a2)
        return in1 != in2

    def side_of(self, q, visit):
        """_L when germ ``q`` leaves inside the visit's left arc, else _R."""
        _, tok_in, tok_out = visit
        return _L if self.cyclic_between(tok_out, q, tok_in) else _R


def _ray_position(surface, model, corner, w):
    """Exact angle of ray ``w`` at ``corner`` from the vertex reference ray."""
    cls = surface.corner_class(corner)
    orbit = surface.vertex_classes()[cls]
    pos = AngleDatum(start=model.vec(orbit[0]))
    for c in orbit:
        if c == corner:
            break
        pos.add(surface.corner_angle_datum(c))
    else:
        raise AssertionError("corner missing from its vertex orbit")
    cw_ray = model.vec(corner)
    cr = cross(cw_ray, w)
    if cr < 0 or (cr == 0 and dot(cw_ray, w) < 0):
        raise AssertionError("ray outside its corner wedge")
    pos.add_sector(cw_ray, w)
    return pos


# ---------------------------------------------------------------------------
# per-triangle pieces and interior crossings
# ---------------------------------------------------------------------------


def _chord_pieces(surface, model, chord):
    """(triangle, entry, exit) pieces of a chord in triangle-local coords."""
    gates = chord.gates
    charts = develop_corridor(model, gates)
    portals = corridor_portals(model, gates, charts)
    p0 = model.corner_pos(chord.start_corner)
    vec = chord.vec
    cuts = []
    for a, b in portals:
        w = vsub(b, a)
        denom = cross(w, vec)
        t = Fraction(cross(w, vsub(a, p0)), denom)
        cuts.append(t)
    pts = [Fraction(0)] + cuts + [Fraction(1)]
    out = []
    tris = [surface.tri_of(chord.start_corner)] + \
           [surface.tri_of(surface.opp(h)) for h in gates]
    for j, tri in enumerate(tris):
        t0, t1 = pts[j], pts[j + 1]
        dev_in = (p0[0] + t0 * vec[0], p0[1] + t0 * vec[1])
        dev_out = (p0[0] + t1 * vec[0], p0[1] + t1 * vec[1])
        lam, off = charts[j]
        inv = lambda z: smul(lam, vsub(z, off))
        out.append((tri, inv(dev_in), inv(dev_out)))
    return out


def _proper_cross(p1, p2, q1, q2):
    d1 = vsub(p2, p1)
    d2 = vsub(q2, q1)
    denom = cross(d1, d2)
    if denom == 0:
        return False
    r = vsub(q1, p1)
    t = Fraction(cross(r, d2), denom)
    s = Fraction(cross(r, d1), denom)
    return 0 < t < 1 and 0 < s < 1


def _interior_crossings(surface, model, strands, pairs):
    """Count transverse interior crossings between chord pieces.

    ``pairs`` selects which (rep, rep) combinations to count.
    """
    boxes = {}
    for rid, chords, _ in strands.chords:
        for ci, ch in enumerate(chords):
            for tri, a, b in _chord_pieces(surface, model, ch):
                boxes.setdefault(tri, []).append((rid, ci, a, b))
    count = 0
    for tri, items in boxes.items():
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                r1, c1, a1, b1 = items[i]
                r2, c2, a2, b2 = items[j]
                if (r1, r2) not in pairs and (r2, r1) not in pairs:
                    continue
                if r1 == r2 and c1 == c2:
                    continue
                if _proper_cross(a1, b1, a2, b2):
                    count += 1
                else:
                    count += _endpoint_cross(surface, tri, (a1, b1), (a2, b2))
    return count


def _endpoint_cross(surface, tri, seg1, seg2):
    """Transverse crossing exactly at a shared edge-interior point.

    Both strands cross the same edge at the same point; the crossing is
    counted once, in the triangle whose half-edge id is the smaller of the
    pair, on the entry side.
    """
    a1, b1 = seg1
    a2, b2 = seg2
    shared = None
    for p in (a1, b1):
        if p == a2 or p == b2:
            shared = p
    if shared is None:
        return 0
    d1 = vsub(b1, a1)
    d2 = vsub(b2, a2)
    if cross(d1, d2) == 0:
        return 0
    # attribute at the entry points only so each geometric crossing is
    # counted exactly once across the two adjacent triangles
    if shared == a1 and shared == a2:
        return 1
    return 0


# ---------------------------------------------------------------------------
# contacts along shared connections
# ---------------------------------------------------------------------------


def _instances_by_connection(surface, model, strands):
    groups = {}
    for rid, chords, _ in strands.chords:
        for ci, ch in enumerate(chords):
            key = ch.undirected_key(surface, model)
            fw = ch.geom_key(surface, model) == key
            groups.setdefault(key, []).append((rid, ci, fw))
    return groups


def _contact_components(surface, model, strands, groups, pair_filter):
    """Union shared-run contacts and count side flips.

    A contact between two instances propagates across a vertex when both
    curves continue together along the next connection.  Each maximal
    contact contributes one crossing iff the relative side flips between its
    two free ends.
    """
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent.setdefault(x, x)
        parent.setdefault(y, y)
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    pairs = []
    for key, insts in groups.items():
        for i in range(len(insts)):
            for j in range(i + 1, len(insts)):
                ra, ca, fa = insts[i]
                rb, cb, fb = insts[j]
                if not pair_filter(ra, rb):
                    continue
                pairs.append(((ra, ca, fa), (rb, cb, fb)))
    for pa, pb in pairs:
        k = _pair_key(pa, pb)
        parent.setdefault(k, k)
    # link consecutive pairs: both strands continue together
    for pa, pb in pairs:
        for end in (True, False):
            na = _next_instance(strands, pa, end)
            nb = _next_instance(strands, pb, end)
            if na is None or nb is None:
                continue
            ta = strands.angular(na[3])
            tb = strands.angular(nb[3])
            if ta.cmp(tb) == 0 and _same_geom(surface, model, strands, na, nb):
                k1 = _pair_key(pa, pb)
                k2 = _pair_key(na[:3], nb[:3])
                if k2 in parent or True:
                    parent.setdefault(k1, k1)
                    parent.setdefault(k2, k2)
                    union(k1, k2)
    comps = {}
    for pa, pb in pairs:
        k = _pair_key(pa, pb)
        comps.setdefault(find(k), []).append((pa, pb))
    return comps


def _pair_key(pa, pb):
    return tuple(sorted((pa[:2], pb[:2])))


def _next_instance(strands, inst, canonical_end):
    """Instance continuing past one end of ``inst``, plus its out-token.

    ``canonical_end`` True looks past the canonical-orientation endpoint of
    the connection, False past the other end.  Returns (rid, chord, fw,
    out_token) or None.
    """
    rid, ci, fw = inst
    walk_forward = (fw == canonical_end)
    _, chords, _ = strands.chords[rid]
    n = len(chords)
    if walk_forward:
        tok = (rid, (ci + 1) % n, True)
        return (rid, (ci + 1) % n, None, tok)
    tok = (rid, (ci - 1) % n, False)
    return (rid, (ci - 1) % n, None, tok)


def _same_geom(surface, model, strands, na, nb):
    ra, ca = na[0], na[1]
    rb, cb = nb[0], nb[1]
    cha = strands.chords[ra][1][ca]
    chb = strands.chords[rb][1][cb]
    return cha.undirected_key(surface, model) == chb.undirected_key(surface, model)


def _contact_flips(surface, model, strands, comps):
    """Crossing count: one per contact whose relative side flips."""
    total = 0
    flips = []
    for comp in comps.values():
        sides = _component_sides(surface, model, strands, comp)
        if sides is None:
            continue
        s0, s1 = sides
        if s0 != s1:
            total += 1
            flips.append(comp)
    return total, flips


def _component_sides(surface, model, strands, comp):
    """Sides of strand b relative to strand a at the two free ends."""
    # collect the instance pairs of the component, identify free ends: an
    # end of a pair not linked to another pair of the same component
    members = set()
    for pa, pb in comp:
        members.add((pa[:2], pb[:2]))
    ends = []
    for pa, pb in comp:
        for end in (True, False):
            na = _next_instance(strands, pa, end)
            nb = _next_instance(strands, pb, end)
            linked = False
            ta = strands.angular(na[3])
            tb = strands.angular(nb[3])
            if ta.cmp(tb) == 0 and _same_geom(surface, model, strands, na, nb):
                if (tuple(sorted((na[:2], nb[:2])))) in \
                        set(_pair_key(x, y) for x, y in comp):
                    linked = True
            if not linked:
                ends.append((pa, pb, end))
    if len(ends) != 2:
        # a fully periodic contact: identical curves, caught elsewhere
        raise IdenticalClass("contact has no free end")
    sides = []
    for pa, pb, end in ends:
        qa = _next_instance(strands, pa, end)[3]
        qb = _next_instance(strands, pb, end)[3]
        visit_a = _visit_of_token(strands, qa)
        sides.append(strands.side_of(qb, visit_a))
    return sides[0], sides[1]


def _visit_of_token(strands, tok):
    rid, i, fw = tok
    _, chords, _ = strands.chords[rid]
    n = len(chords)
    if fw:
        anchor_index = i
    else:
        anchor_index = (i + 1) % n
    v = strands.surface.corner_class(strands.chords[rid][2][anchor_index].c_in)
    tok_in = (rid, (anchor_index - 1) % n, False)
    tok_out = (rid, anchor_index, True)
    return (v, tok_in, tok_out)


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def analyze_simplicity(rep):
    """Raise NotSimple unless the class has an embedded representative.

    Also assigns transverse indices to repeated connections of a path
    representative.
    """
    surface, model = rep.surface, rep._model
    if rep.kind == "cylinder":
        _cylinder_power_check(surface, model, rep)
        return
    strands = _Strands(surface, model, [rep])
    if _interior_crossings(surface, model, strands, {(0, 0)}):
        raise NotSimple("representative crosses itself transversally")
    groups = _instances_by_connection(surface, model, strands)
    comps = _contact_components(surface, model, strands, groups,
                                lambda ra, rb: True)
    try:
        flips, _ = _contact_flips(surface, model, strands, comps)
    except IdenticalClass:
        raise NotSimple("representative traverses a cycle twice")
    if flips:
        raise NotSimple("parallel strands of the representative cross")
    visits = strands.visits(0)
    tied = _tied_visit_pairs(strands, visits)
    for i in range(len(visits)):
        for j in range(i + 1, len(visits)):
            if visits[i][0] != visits[j][0]:
                continue
            if (i, j) in tied:
                continue
            if strands.interleaved(visits[i], visits[j]):
                raise NotSimple("representative crosses itself at a vertex")
    _assign_transverse(surface, model, strands, rep, groups)


def _tied_visit_pairs(strands, visits):
    """Visit pairs sharing a germ; their crossings are contact business."""
    tied = set()
    for i in range(len(visits)):
        for j in range(i + 1, len(visits)):
            if visits[i][0] != visits[j][0]:
                continue
            _, a1, a2 = visits[i]
            _, b1, b2 = visits[j]
            for x in (a1, a2):
                for y in (b1, b2):
                    if strands.angular(x).cmp(strands.angular(y)) == 0:
                        tied.add((i, j))
    return tied


def _assign_transverse(surface, model, strands, rep, groups):
    import functools
    orders = {}
    for key, insts in groups.items():
        if len(insts) < 2:
            for rid, ci, fw in insts:
                rep.connections[ci].transverse_index = 0
            continue
        toks = []
        for rid, ci, fw in insts:
            tok = (rid, ci, True) if fw else (rid, ci, False)
            toks.append(((rid, ci, fw), tok))

        def cmp_items(x, y):
            return strands.cmp(x[1], y[1])

        toks.sort(key=functools.cmp_to_key(cmp_items))
        for rank, ((rid, ci, fw), _) in enumerate(toks):
            rep.connections[ci].transverse_index = rank
        orders[key] = [item[0] for item in toks]
    rep.transverse_orders = orders


def _cylinder_power_check(surface, model, rep):
    for chords, _ in rep.boundaries:
        if not chords:
            continue
        keys = [ch.geom_key(surface, model) for ch in chords]
        n = len(keys)
        for p in range(1, n):
            if n % p == 0 and keys == keys[p:] + keys[:p]:
                raise NotSimple("class is a proper power of a simple class")


def geometric_intersection(surface, rep_a, rep_b):
    """Minimal transverse crossing number of two tightened classes."""
    if rep_a.rep_key() == rep_b.rep_key():
        warnings.warn("geometric intersection of a class with itself is 0 "
                      "by convention", stacklevel=2)
        return 0
    model = rep_a._model
    strands = _Strands(surface, model, [rep_a, rep_b])
    count = _interior_crossings(surface, model, strands, {(0, 1)})
    groups = _instances_by_connection(surface, model, strands)
    comps = _contact_components(surface, model, strands, groups,
                                lambda ra, rb: ra != rb)
    try:
        flips, _ = _contact_flips(surface, model, strands, comps)
    except IdenticalClass:
        warnings.warn("identical representatives; intersection 0", stacklevel=2)
        return 0
    count += flips
    va = strands.visits(0)
    vb = strands.visits(1)
    for i in range(len(va)):
        for j in range(len(vb)):
            if va[i][0] != vb[j][0]:
                continue
            if _pair_tied(strands, va[i], vb[j]):
                continue
            if strands.interleaved(va[i], vb[j]):
                count += 1
    return count


def _pair_tied(strands, va, vb):
    _, a1, a2 = va
    _, b1, b2 = vb
    for x in (a1, a2):
        for y in (b1, b2):
            if strands.angular(x).cmp(strands.angular(y)) == 0:
                return True
    return False
