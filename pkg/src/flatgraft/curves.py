"""Simple closed curves: combinatorial classes, flat geodesics, cylinders.

A combinatorial curve records the cyclic sequence of triangulation edges a
loop crosses.  Tightening straightens the loop to its geodesic
representative: either a cyclic chain of saddle connections satisfying the
angle condition, or the maximal flat cylinder when the class has a parallel
family of representatives.
"""

from fractions import Fraction

from .alglength import AlgebraicLength
from .angles import AngleDatum
from .errors import CurveError, NullHomotopic, Peripheral, NotSimple
from .geom import (IntModel, bend_runs, chart_apply, corridor_portals,
                   develop_corridor, funnel)
from .linalg import cross, dot, primitive, smul, vneg, vsub

_MAX_ROUNDS = 10000


class CombinatorialCurve:
    """Cyclic list of oriented-edge crossings, stored in exit form.

    A crossing ``(h, +1)`` leaves the triangle owning ``h`` through it; the
    entering form ``(h, -1)`` is normalized to ``(opp(h), +1)``.
    """

    __slots__ = ("crossings",)

    def __init__(self, surface, crossings):
        norm = []
        for item in crossings:
            if isinstance(item, tuple):
                h, side = item
                norm.append(h if side > 0 else surface.opp(h))
            else:
                norm.append(item)
        if not norm:
            raise CurveError("a combinatorial curve needs at least one crossing")
        n = len(norm)
        for i in range(n):
            h = norm[i]
            nxt = norm[(i + 1) % n]
            if surface.tri_of(surface.opp(h)) != surface.tri_of(nxt):
                raise CurveError(
                    "crossings %d and %d do not share a triangle" % (i, (i + 1) % n))
        self.crossings = tuple(norm)

    def canonical_key(self, surface):
        """Minimal rotation over both orientations; dedups raw input words."""
        fw = self.crossings
        bw = tuple(surface.opp(h) for h in reversed(fw))
        best = None
        for seq in (fw, bw):
            for r in range(len(seq)):
                rot = seq[r:] + seq[:r]
                if best is None or rot < best:
                    best = rot
        return best

    def reversed(self, surface):
        return CombinatorialCurve(
            surface, tuple(surface.opp(h) for h in reversed(self.crossings)))

    def __len__(self):
        return len(self.crossings)

    def __repr__(self):
        return "CombinatorialCurve(%s)" % (self.crossings,)


class SaddleConnection:
    """Oriented straight segment between cone/marked vertices."""

    __slots__ = ("start_class", "end_class", "vector", "transverse_index")

    def __init__(self, start_class, end_class, vector, transverse_index=0):
        self.start_class = start_class
        self.end_class = end_class
        self.vector = vector
        self.transverse_index = transverse_index

    def __repr__(self):
        return "SaddleConnection(%d->%d, %s)" % (
            self.start_class, self.end_class, self.vector)


class _Chord:
    """Straight piece of a tightened curve, in integer coordinates.

    ``start_corner``/``end_corner`` are corners of the triangles in which the
    chord starts and ends, ``gates`` the edges crossed interiorly, ``vec``
    the displacement in the start triangle's chart and ``lam`` the product of
    the gate transition signs (the end-chart displacement is lam*vec).
    """

    __slots__ = ("start_corner", "end_corner", "gates", "vec", "lam")

    def __init__(self, start_corner, end_corner, gates, vec, lam):
        self.start_corner = start_corner
        self.end_corner = end_corner
        self.gates = tuple(gates)
        self.vec = vec
        self.lam = lam

    def vec_end(self):
        return smul(self.lam, self.vec)

    def reversed(self, surface):
        gates = tuple(surface.opp(h) for h in reversed(self.gates))
        return _Chord(self.end_corner, self.start_corner, gates,
                      vneg(self.vec_end()), self.lam)

    def length2(self):
        return dot(self.vec, self.vec)

    def side_keys(self, surface, model):
        """Equivalent (corner, vec) encodings of the oriented chord.

        A chord running along a triangulation edge is visible from both
        sides; both encodings are produced so geometric identity is stable.
        """
        keys = [(self.start_corner, self.vec)]
        c = self.start_corner
        if not self.gates:
            if cross(model.vec(c), self.vec) == 0 and \
                    dot(model.vec(c), self.vec) > 0:
                k = surface.opp(c)
                lam = -surface.sign(c)
                keys.append((surface.next_he(k), smul(lam, self.vec)))
            p = surface.prev_he(c)
            if cross(model.vec(p), self.vec) == 0 and \
                    dot(model.vec(p), self.vec) < 0:
                k = surface.opp(p)
                lam = -surface.sign(p)
                keys.append((k, smul(lam, self.vec)))
        return keys

    def geom_key(self, surface, model):
        return min(self.side_keys(surface, model))

    def undirected_key(self, surface, model):
        rev = self.reversed(surface)
        return min(self.geom_key(surface, model), rev.geom_key(surface, model))

    def __repr__(self):
        return "_Chord(%d->%d, %s, %d gates)" % (
            self.start_corner, self.end_corner, self.vec, len(self.gates))


class _Anchor:
    """A vertex visit: entry/exit corners plus the fan between them.

    ``chain`` lists the corners from entry to exit along one side of the
    curve; ``ccw`` tells whether consecutive chain corners are ccw-neighbors
    (then the chain is the fan on the curve's right side) or cw-neighbors
    (left side).  ``chain`` is None for seeded anchors, which forces a
    first-arrival walk when angles are computed.
    """

    __slots__ = ("c_in", "c_out", "chain", "ccw")

    def __init__(self, c_in, c_out, chain=None, ccw=True):
        self.c_in = c_in
        self.c_out = c_out
        self.chain = tuple(chain) if chain is not None else None
        self.ccw = ccw


class PathRep:
    """Geodesic representative made of saddle connections."""

    kind = "path"

    def __init__(self, surface, model, chords, anchors):
        self.surface = surface
        self._model = model
        self.chords = tuple(chords)
        self.anchors = tuple(anchors)
        scale = model.scale
        self.connections = tuple(
            SaddleConnection(
                surface.corner_class(ch.start_corner),
                surface.corner_class(ch.end_corner),
                (Fraction(ch.vec[0], scale), Fraction(ch.vec[1], scale)))
            for ch in self.chords)

    def rep_key(self):
        s, m = self.surface, self._model
        fw = tuple(ch.geom_key(s, m) for ch in self.chords)
        bw = tuple(ch.reversed(s).geom_key(s, m)
                   for ch in reversed(self.chords))
        best = None
        for seq in (fw, bw):
            for r in range(len(seq)):
                rot = seq[r:] + seq[:r]
                if best is None or rot < best:
                    best = rot
        return ("path", best)

    def __repr__(self):
        return "PathRep(%d connections)" % len(self.chords)


class CylinderRep:
    """Maximal flat cylinder swept by the parallel representatives."""

    kind = "cylinder"

    def __init__(self, surface, model, direction, holonomy_vec, span,
                 boundaries, closed_up):
        self.surface = surface
        self._model = model
        self.direction = direction            # primitive integer vector
        scale = model.scale
        self.holonomy = (Fraction(holonomy_vec[0], scale),
                         Fraction(holonomy_vec[1], scale))
        # span is the cross product of the primitive direction with the
        # transversal extent; euclidean height = span / |direction|
        self.span = Fraction(span, scale)
        self.boundaries = boundaries          # two (chords, anchors) pairs
        self.closed_up = closed_up
        self.circumference = AlgebraicLength.norm_of(self.holonomy)

    def euclidean_height(self):
        d = self.direction
        n2 = Fraction(d[0] * d[0] + d[1] * d[1])
        return AlgebraicLength.sqrt_of(self.span * self.span / n2)

    def boundary_chords(self, which):
        return self.boundaries[which][0]

    def boundary_anchors(self, which):
        return self.boundaries[which][1]

    def rep_key(self):
        s, m = self.surface, self._model
        keys = []
        for chords, _ in self.boundaries:
            fw = tuple(ch.geom_key(s, m) for ch in chords)
            bw = tuple(ch.reversed(s).geom_key(s, m) for ch in reversed(chords))
            best = None
            for seq in (fw, bw):
                for r in range(len(seq)):
                    rot = seq[r:] + seq[:r]
                    if best is None or rot < best:
                        best = rot
            keys.append(best)
        return ("cylinder", min(keys))

    def __repr__(self):
        return "CylinderRep(direction %s, span %s)" % (
            self.direction, self.span)


# ---------------------------------------------------------------------------
# tightening
# ---------------------------------------------------------------------------


def _reduce_open(surface, gates):
    out = []
    for h in gates:
        if out and out[-1] == surface.opp(h):
            out.pop()
        else:
            out.append(h)
    return out


def _reduce_cyclic(surface, gates):
    g = _reduce_open(surface, list(gates))
    while len(g) >= 2 and g[0] == surface.opp(g[-1]):
        g = _reduce_open(surface, g[1:-1])
    return g


def _corner_at_point(model, charts, pos, tri, pt):
    for h in model.surface.triangle_halfedges(tri):
        if chart_apply(charts[pos], model.corner_pos(h)) == pt:
            return h
    raise AssertionError("no corner of triangle %d develops to %s" % (tri, pt))


class _State:
    __slots__ = ("anchors", "corridors")

    def __init__(self, anchors, corridors):
        self.anchors = anchors        # corridors[k] leaves anchors[k]
        self.corridors = corridors


def _fan_gates(surface, c_in, c_out, left_side):
    """Gates crossed when a vertex visit is pushed off to one side.

    ``left_side`` walks the fan clockwise (curve's left); otherwise
    counterclockwise (right side).  Corners run from c_in to c_out.
    """
    gates = []
    c = c_in
    guard = 0
    while c != c_out:
        if left_side:
            gates.append(c)
            c = surface.cw_corner(c)
        else:
            gates.append(surface.prev_he(c))
            c = surface.ccw_corner(c)
        guard += 1
        if guard > surface.num_half_edges():
            raise NotSimple("vertex fan walk does not close up")
    return gates


def _sector(a, b):
    return AngleDatum().add_sector(a, b)


def _chain_angle(surface, model, chain, ccw, r_in, d_out):
    """Angle swept across an explicit fan chain.

    For a ccw chain (fan on the curve's right) the sweep runs from ``r_in``
    to ``d_out``; for a cw chain (left fan) from ``d_out`` to ``r_in`` along
    the reversed chain.  Raises ValueError when a partial sector does not fit
    inside its wedge.
    """
    if ccw:
        corners = chain
        first_dir, last_dir = r_in, d_out
    else:
        corners = tuple(reversed(chain))
        first_dir, last_dir = d_out, r_in
    if len(corners) == 1:
        c = cross(first_dir, last_dir)
        if c < 0 or (c == 0 and dot(first_dir, last_dir) < 0):
            raise ValueError("sector wraps outside a single wedge")
        return _sector(first_dir, last_dir)
    total = AngleDatum()
    c0 = corners[0]
    ccw_bd = vneg(model.vec(surface.prev_he(c0)))
    cr = cross(first_dir, ccw_bd)
    if cr < 0 or (cr == 0 and dot(first_dir, ccw_bd) < 0):
        raise ValueError("entry direction outside the first wedge")
    total.add_sector(first_dir, ccw_bd)
    for c in corners[1:-1]:
        total.add(surface.corner_angle_datum(c))
    cl = corners[-1]
    cw_bd = model.vec(cl)
    cr = cross(cw_bd, last_dir)
    if cr < 0 or (cr == 0 and dot(cw_bd, last_dir) < 0):
        raise ValueError("exit direction outside the last wedge")
    total.add_sector(cw_bd, last_dir)
    return total


def _anchor_angles(surface, model, anchor, r_in, d_out):
    """(theta_left, theta_right) at a visit, as exact AngleDatum values."""
    cone = surface.class_angle_half_turns(surface.corner_class(anchor.c_in))
    if anchor.chain is not None:
        if anchor.ccw:
            tr = _chain_angle(surface, model, anchor.chain, True, r_in, d_out)
            return tr.complement_to(cone), tr
        tl = _chain_angle(surface, model, anchor.chain, False, r_in, d_out)
        return tl, tl.complement_to(cone)
    # seeded anchor: first-arrival ccw walk for the right-side fan
    chain = [anchor.c_in]
    orbit = len(surface.vertex_classes()[surface.corner_class(anchor.c_in)])
    for _ in range(orbit + 2):
        if chain[-1] == anchor.c_out or (len(chain) > 1 and
                                         chain[-1] == anchor.c_out):
            try:
                tr = _chain_angle(surface, model, tuple(chain), True,
                                  r_in, d_out)
                return tr.complement_to(cone), tr
            except ValueError:
                pass
        chain.append(surface.ccw_corner(chain[-1]))
    raise NotSimple("cannot resolve the fan at a seeded vertex visit")


def _chord_dirs(chords, i, model):
    n = len(chords)
    inc = chords[(i - 1) % n]
    out = chords[i]
    return vneg(inc.vec_end()), out.vec


def tighten(surface, curve):
    """Geodesic representative of a combinatorial curve class.

    Returns a PathRep or a CylinderRep; raises NullHomotopic, Peripheral or
    NotSimple on degenerate classes.
    """
    from .intersect import analyze_simplicity

    model = IntModel(surface)
    gates = _reduce_cyclic(surface, curve.crossings)
    if not gates:
        raise NullHomotopic("curve crossings cancel completely")
    rep = _tighten_gates(surface, model, gates)
    analyze_simplicity(rep)
    return rep


def _tighten_gates(surface, model, gates):
    state = None
    for _ in range(_MAX_ROUNDS):
        if state is None:
            gates = _reduce_cyclic(surface, gates)
            if not gates:
                raise NullHomotopic("curve collapses during tightening")
            out = _corridor_case(surface, model, gates)
            if isinstance(out, CylinderRep):
                return out
            state = out
            continue
        chords = _funnel_state(surface, model, state)
        bad = _first_angle_failure(surface, model, state, chords)
        if bad is None:
            cyl = _path_cylinder_check(surface, model, state, chords)
            if cyl is not None:
                return cyl
            return PathRep(surface, model, chords, state.anchors)
        state, gates = _unfold(surface, state, *bad)
    raise CurveError("tightening did not converge")


def _funnel_state(surface, model, state):
    """Funnel every corridor; rebuilds the state, returns aligned chords."""
    n = len(state.anchors)
    new_anchors = []
    chords_out = []
    for i in range(n):
        a = state.anchors[i]
        b = state.anchors[(i + 1) % n]
        gates = state.corridors[i]
        charts = develop_corridor(model, gates)
        portals = corridor_portals(model, gates, charts)
        p = model.corner_pos(a.c_out)
        q = chart_apply(charts[-1], model.corner_pos(b.c_in))
        bends = funnel(p, portals, q)
        runs = bend_runs(surface, gates, portals, bends, len(gates) - 1)
        chords, bend_anchors = _assemble_open(
            surface, model, gates, charts, a, b, p, q, runs)
        new_anchors.append(a)
        chords_out.append(chords[0])
        for k, ban in enumerate(bend_anchors):
            new_anchors.append(ban)
            chords_out.append(chords[k + 1])
    state.anchors = new_anchors
    state.corridors = [list(ch.gates) for ch in chords_out]
    return chords_out


def _run_anchor(surface, model, gates, charts, pt, first, last, is_left):
    """Anchor for a vertex run (gates first..last all touch ``pt``)."""
    c_in = _corner_at_point(model, charts, first,
                            surface.tri_of(gates[first]), pt)
    c_out = _corner_at_point(model, charts, last + 1,
                             surface.tri_of(surface.opp(gates[last])), pt)
    chain = [c_in]
    c = c_in
    for _ in range(first, last + 1):
        c = surface.ccw_corner(c) if is_left else surface.cw_corner(c)
        chain.append(c)
    if chain[-1] != c_out:
        raise AssertionError("fan chain mismatch at a vertex run")
    return _Anchor(c_in, c_out, chain, ccw=is_left)


def _merge_leading(anchor, chain, ccw):
    if anchor.chain is not None and anchor.ccw == ccw \
            and anchor.chain[-1] == chain[0]:
        anchor.chain = anchor.chain + tuple(chain[1:])
    elif anchor.chain is None and anchor.c_in == anchor.c_out == chain[0]:
        anchor.chain = tuple(chain)
        anchor.ccw = ccw
    else:
        anchor.chain = None
    anchor.c_out = chain[-1]


def _merge_trailing(anchor, chain, ccw):
    if anchor.chain is not None and anchor.ccw == ccw \
            and chain[-1] == anchor.chain[0]:
        anchor.chain = tuple(chain) + anchor.chain[1:]
    elif anchor.chain is None and anchor.c_in == anchor.c_out == chain[-1]:
        anchor.chain = tuple(chain)
        anchor.ccw = ccw
    else:
        anchor.chain = None
    anchor.c_in = chain[0]


def _assemble_open(surface, model, gates, charts, a, b, p, q, runs):
    """Chords and bend anchors along one funneled corridor.

    Funnel bends at the positions of the corridor endpoints are vertex
    grazes: the path enters the endpoint vertex through a different wedge
    and walks part of the fan without crossing it.  Those runs fold into
    the endpoint anchors instead of producing zero-length chords.
    """
    runs = list(runs)
    lead_last = -1
    while runs and runs[0][0] == p:
        pt, first, last, is_left = runs.pop(0)
        anchor = _run_anchor(surface, model, gates, charts, pt, first, last,
                             is_left)
        _merge_leading(a, anchor.chain, anchor.ccw)
        lead_last = last
    trail_first = len(gates)
    while runs and runs[-1][0] == q:
        pt, first, last, is_left = runs.pop()
        anchor = _run_anchor(surface, model, gates, charts, pt, first, last,
                             is_left)
        _merge_trailing(b, anchor.chain, anchor.ccw)
        trail_first = first
    bend_anchors = []
    waypoints = []
    for pt, first, last, is_left in runs:
        anchor = _run_anchor(surface, model, gates, charts, pt, first, last,
                             is_left)
        bend_anchors.append(anchor)
        waypoints.append((pt, first, last, anchor))
    first_target = waypoints[0][0] if waypoints else q
    last_source = waypoints[-1][0] if waypoints else p
    lead_limit = waypoints[0][1] if waypoints else trail_first
    trail_limit = (waypoints[-1][2] + 1) if waypoints else None
    lead_last = _normalize_leading(surface, model, gates, portals, a,
                                   lead_last, p, first_target, lead_limit)
    if trail_limit is None:
        trail_limit = lead_last + 1
    trail_first = _normalize_trailing(surface, model, gates, portals, b,
                                      trail_first, q, last_source, trail_limit)
    chords = []
    prev_pt, prev_last, prev_exit = p, lead_last, a.c_out
    for item in waypoints + [(q, trail_first, None, None)]:
        pt, first, last, anchor = item
        entry = anchor.c_in if anchor is not None else b.c_in
        g0, g1 = prev_last + 1, first - 1
        sub = list(gates[g0:g1 + 1])
        lam0 = charts[g0][0]
        vec = smul(lam0, vsub(pt, prev_pt))
        if vec == (0, 0):
            raise CurveError("degenerate zero-length chord while tightening")
        lam = charts[g1 + 1][0] * lam0
        chords.append(_Chord(prev_exit, entry, sub, vec, lam))
        if anchor is not None:
            prev_pt, prev_last, prev_exit = pt, last, anchor.c_out
    return chords, bend_anchors


def _wedge_side(model, surface, c, v):
    """0 if ray ``v`` lies in the closed wedge of corner ``c``; -1 when it
    falls clockwise of the wedge, +1 counterclockwise."""
    cwr = model.vec(c)
    ccwr = vneg(model.vec(surface.prev_he(c)))
    c1 = cross(cwr, v)
    if c1 < 0 or (c1 == 0 and dot(cwr, v) < 0):
        return -1
    c2 = cross(v, ccwr)
    if c2 < 0 or (c2 == 0 and dot(v, ccwr) < 0):
        return 1
    return 0


def _seg_crosses_portal(p, tgt, portal):
    a, b = portal
    w = vsub(b, a)
    v = vsub(tgt, p)
    denom = cross(w, v)
    if denom == 0:
        return False
    t = Fraction(cross(w, vsub(a, p)), denom)
    s = Fraction(cross(v, vsub(a, p)), denom)
    return 0 < t < 1 and 0 < s < 1


def _normalize_leading(surface, model, gates, portals, a, lead_last, p,
                       target, limit):
    """Fold fan gates grazed at the corridor start into the start anchor.

    Consecutive gates whose portals pass through the start vertex and are
    not crossed by the first chord's interior belong to the vertex fan; the
    walk direction around the fan is read off the gate identity.
    """
    guard = 0
    while True:
        idx = lead_last + 1
        if idx >= limit or idx >= len(gates):
            return lead_last
        portal = portals[idx]
        if p != portal[0] and p != portal[1]:
            return lead_last
        if _seg_crosses_portal(p, target, portal):
            return lead_last
        c = a.c_out
        if gates[idx] == surface.prev_he(c):
            _merge_leading(a, (c, surface.ccw_corner(c)), True)
        elif gates[idx] == c:
            _merge_leading(a, (c, surface.cw_corner(c)), False)
        else:
            raise CurveError("corridor start does not follow the vertex fan")
        lead_last = idx
        guard += 1
        if guard > surface.num_half_edges():
            raise NotSimple("start of corridor wraps its vertex")


def _normalize_trailing(surface, model, gates, portals, b, trail_first, q,
                        source, limit):
    """Fold fan gates grazed at the corridor end into the end anchor."""
    guard = 0
    while True:
        idx = trail_first - 1
        if idx < limit or idx < 0:
            return trail_first
        portal = portals[idx]
        if q != portal[0] and q != portal[1]:
            return trail_first
        if _seg_crosses_portal(source, q, portal):
            return trail_first
        c = b.c_in
        cw = surface.cw_corner(c)
        ccw = surface.ccw_corner(c)
        if gates[idx] == surface.prev_he(cw):
            _merge_trailing(b, (cw, c), True)
        elif gates[idx] == ccw:
            _merge_trailing(b, (ccw, c), False)
        else:
            raise CurveError("corridor end does not follow the vertex fan")
        trail_first = idx
        guard += 1
        if guard > surface.num_half_edges():
            raise NotSimple("end of corridor wraps its vertex")


def _first_angle_failure(surface, model, state, chords):
    for i, a in enumerate(state.anchors):
        r_in, d_out = _chord_dirs(chords, i, model)
        tl, tr = _anchor_angles(surface, model, a, r_in, d_out)
        marked = surface.is_marked(surface.corner_class(a.c_in))
        left_ok = tl.cmp_half_turns(1) >= 0
        right_ok = tr.cmp_half_turns(1) >= 0
        if marked:
            if not (left_ok or right_ok):
                return (i, True)
        elif not (left_ok and right_ok):
            return (i, not left_ok)
    return None


def _unfold(surface, state, idx, side_left):
    n = len(state.anchors)
    a = state.anchors[idx]
    fan = _fan_gates(surface, a.c_in, a.c_out, side_left)
    if n == 1:
        merged = list(state.corridors[0]) + fan
        return None, merged
    prev_i = (idx - 1) % n
    merged = _reduce_open(
        surface, list(state.corridors[prev_i]) + fan + list(state.corridors[idx]))
    anchors2 = []
    corridors2 = []
    for j in range(n):
        if j == idx:
            continue
        anchors2.append(state.anchors[j])
        corridors2.append(merged if j == prev_i else list(state.corridors[j]))
    return _State(anchors2, corridors2), None


def _path_cylinder_check(surface, model, state, chords):
    """Detect cylinder classes whose tightened path borders a flat side."""
    n = len(state.anchors)
    for side_left in (True, False):
        flat = True
        for i in range(n):
            a = state.anchors[i]
            r_in, d_out = _chord_dirs(chords, i, model)
            tl, tr = _anchor_angles(surface, model, a, r_in, d_out)
            t = tl if side_left else tr
            if t.cmp_half_turns(1) != 0:
                flat = False
                break
        if not flat:
            continue
        gates = []
        for i in range(n):
            a = state.anchors[i]
            gates.extend(_fan_gates(surface, a.c_in, a.c_out, side_left))
            gates.extend(chords[i].gates)
        gates = _reduce_cyclic(surface, gates)
        if not gates:
            continue
        out = _corridor_case(surface, model, gates, cylinder_only=True)
        if isinstance(out, CylinderRep):
            return out
    return None


def _corridor_case(surface, model, gates, cylinder_only=False):
    """Handle a cyclic corridor with no pinned vertices."""
    charts = develop_corridor(model, gates)
    lam, off = charts[-1]
    if lam == 1 and off != (0, 0):
        portals = corridor_portals(model, gates, charts)
        iv = _corridor_interval(portals, off)
        if iv is not None:
            lo, hi = iv
            if lo < hi:
                return _grow_cylinder(surface, model, gates, off)
            if not cylinder_only:
                st = _through_vertex_state(surface, model, gates, lo)
                if st is not None:
                    return st
    if cylinder_only:
        return None
    return _seed_state(surface, model, gates)


def _through_vertex_state(surface, model, gates, level):
    """Anchored state for the unique invariant line through vertices."""
    charts = develop_corridor(model, gates)
    off = charts[-1][1]
    portals = corridor_portals(model, gates, charts)
    rot = _runs_rotation(portals, off, level, charts[-1])
    if rot is None:
        return None
    gates2 = list(gates[rot:]) + list(gates[:rot])
    charts2 = develop_corridor(model, gates2)
    off2 = charts2[-1][1]
    portals2 = corridor_portals(model, gates2, charts2)
    iv = _corridor_interval(portals2, off2)
    if iv is None or iv[0] != iv[1]:
        return None
    runs = _linear_runs(portals2, off2, iv[0])
    if not runs:
        return None
    return _assemble_cyclic(surface, model, gates2, charts2, runs)


def _corridor_interval(portals, d):
    lo = hi = None
    for a, b in portals:
        w = vsub(b, a)
        if cross(w, d) >= 0:
            return None
        oa, ob = cross(d, a), cross(d, b)
        mn, mx = min(oa, ob), max(oa, ob)
        lo = mn if lo is None else max(lo, mn)
        hi = mx if hi is None else min(hi, mx)
    if lo is None or lo > hi:
        return None
    return lo, hi


def _touches(portals, d, level):
    """For each portal, the endpoint lying on the level line (or None)."""
    out = []
    for a, b in portals:
        if cross(d, a) == level:
            out.append((a, False))
        elif cross(d, b) == level:
            out.append((b, True))
        else:
            out.append(None)
    return out


def _runs_rotation(portals, d, level, hol):
    """Rotation offset placing every vertex run in linear position.

    A valid offset is a run boundary: rotating there leaves no run crossing
    the seam.  Seam comparisons at the corridor closure transport through
    the holonomy chart.
    """
    touches = _touches(portals, d, level)
    n = len(touches)
    for i in range(n):
        prev = touches[i - 1]
        cur = touches[i]
        if prev is None or cur is None:
            return i
        prev_pt = prev[0]
        cur_pt = chart_apply(hol, cur[0]) if i == 0 else cur[0]
        if prev_pt != cur_pt:
            return i
    return None


def _linear_runs(portals, d, level):
    """Vertex runs (pt, first, last, is_left), assuming none wraps."""
    touches = _touches(portals, d, level)
    runs = []
    for i, item in enumerate(touches):
        if item is None:
            continue
        pt, is_left = item
        if runs and runs[-1][0] == pt and runs[-1][2] == i - 1:
            if runs[-1][3] != is_left:
                raise AssertionError("vertex run changes side")
            runs[-1] = (pt, runs[-1][1], i, is_left)
        else:
            runs.append((pt, i, i, is_left))
    return runs


def _assemble_cyclic(surface, model, gates, charts, runs):
    """Anchored state for a cyclic geodesic touching the given vertex runs."""
    anchors = []
    for pt, first, last, is_left in runs:
        anchors.append(_run_anchor(surface, model, gates, charts, pt, first,
                                   last, is_left))
    corridors = []
    for k in range(len(runs)):
        last_k = runs[k][2]
        first_next = runs[(k + 1) % len(runs)][1]
        if k + 1 < len(runs):
            corridors.append(list(gates[last_k + 1:first_next]))
        else:
            corridors.append(list(gates[last_k + 1:]) + list(gates[:first_next]))
    return _State(anchors, corridors)


def _seed_state(surface, model, gates):
    """Anchor a cyclic corridor at its best boundary vertex."""
    best = None
    n = len(gates)
    for i in range(n):
        rot = list(gates[i + 1:]) + list(gates[:i + 1])
        charts = develop_corridor(model, rot)
        portals = corridor_portals(model, rot, charts)
        g = gates[i]
        for corner in (surface.next_he(surface.opp(g)), surface.opp(g)):
            p = model.corner_pos(corner)
            q = chart_apply(charts[-1], p)
            bends = funnel(p, portals, q)
            length = _path_length(p, bends, q)
            cand = (length, corner, rot, p, q, bends)
            if best is None or length.compare(best[0]) < 0:
                best = cand
    length, corner, rot, p, q, bends = best
    if p == q and not bends:
        if surface.is_marked(surface.corner_class(corner)):
            raise Peripheral("curve tightens into a marked point")
        raise NullHomotopic("curve tightens to a point")
    return _State([_Anchor(corner, corner, None)], [rot])


def _path_length(p, bends, q):
    pts = [p] + [b[0] for b in bends] + [q]
    total = AlgebraicLength.zero()
    for i in range(len(pts) - 1):
        seg = vsub(pts[i + 1], pts[i])
        total = total + AlgebraicLength.sqrt_of(Fraction(dot(seg, seg)))
    return total


# ---------------------------------------------------------------------------
# cylinder growth
# ---------------------------------------------------------------------------


def _cyclic_key(surface, gates):
    g = tuple(_reduce_cyclic(surface, list(gates)))
    if not g:
        return ()
    return min(g[i:] + g[:i] for i in range(len(g)))


def _grow_cylinder(surface, model, gates, d):
    """Maximal cylinder around an invariant line with holonomy ``d``."""
    orig_key = _cyclic_key(surface, gates)
    charts = develop_corridor(model, gates)
    portals = corridor_portals(model, gates, charts)
    lo, hi = _corridor_interval(portals, d)
    up_b, up_extra, closed = _sweep(surface, model, gates, +1, orig_key)
    if closed:
        span = (hi - lo) + up_extra
        boundaries = (up_b, up_b)
    else:
        dn_b, dn_extra, _ = _sweep(surface, model, gates, -1, orig_key)
        span = (hi - lo) + up_extra + dn_extra
        boundaries = (dn_b, up_b)
    return CylinderRep(surface, model, primitive(d), d, span, boundaries,
                       closed)


def _sweep(surface, model, gates, sense, orig_key):
    """Push the corridor across flat vertices in one transverse direction.

    Returns (boundary (chords, anchors), extra span beyond the first band,
    closed_flag).  Offsets are re-derived per stage because rotating a
    corridor conjugates its development; the sweep side is preserved by the
    conjugation.
    """
    extra = 0
    cur = list(gates)
    first = True
    for _ in range(_MAX_ROUNDS):
        charts = develop_corridor(model, cur)
        d = charts[-1][1]
        portals = corridor_portals(model, cur, charts)
        lo, hi = _corridor_interval(portals, d)
        if not first:
            extra += hi - lo
        first = False
        level = hi if sense > 0 else lo
        rot = _runs_rotation(portals, d, level, charts[-1])
        if rot is None:
            raise AssertionError("cylinder boundary wraps a single vertex")
        if rot:
            cur = list(cur[rot:]) + list(cur[:rot])
            charts = develop_corridor(model, cur)
            d = charts[-1][1]
            portals = corridor_portals(model, cur, charts)
            lo, hi = _corridor_interval(portals, d)
            level = hi if sense > 0 else lo
        runs = _linear_runs(portals, d, level)
        nxt = _reroute(surface, model, cur, charts, runs, d)
        if nxt is None:
            boundary = _boundary_chain(surface, model, cur, charts, runs)
            return boundary, extra, False
        if _cyclic_key(surface, nxt) == orig_key:
            boundary = _boundary_chain(surface, model, cur, charts, runs)
            return boundary, extra, True
        cur = nxt
    raise CurveError("cylinder sweep did not converge")


def _boundary_chain(surface, model, gates, charts, runs):
    state = _assemble_cyclic(surface, model, gates, charts, runs)
    chords = _funnel_state(surface, model, state)
    return (tuple(chords), tuple(state.anchors))


def _reroute(surface, model, gates, charts, runs, d):
    """Corridor for lines just beyond the touched level, or None if blocked."""
    new = []
    pos = 0
    for pt, first, last, is_left in runs:
        new.extend(gates[pos:first])
        anchor = _run_anchor(surface, model, gates, charts, pt, first, last,
                             is_left)
        fan = _fan_gates(surface, anchor.c_in, anchor.c_out, is_left)
        new.extend(fan)
        pos = last + 1
    new.extend(gates[pos:])
    new = _reduce_open(surface, new)
    if not new:
        return None
    charts2 = develop_corridor(model, new)
    if charts2[-1][0] != 1:
        return None
    d2 = charts2[-1][1]
    portals2 = corridor_portals(model, new, charts2)
    iv = _corridor_interval(portals2, d2)
    if iv is None or iv[0] >= iv[1]:
        return None
    return new


# ---------------------------------------------------------------------------
# lengths and intersection numbers with the coordinate foliations
# ---------------------------------------------------------------------------


def flat_length(surface, rep):
    """Total flat length of a geodesic representative."""
    if rep.kind == "cylinder":
        return rep.circumference
    total = AlgebraicLength.zero()
    for conn in rep.connections:
        total = total + AlgebraicLength.norm_of(conn.vector)
    return total


def iota_horizontal(surface, rep):
    """Intersection number with the horizontal foliation: sum of |y|."""
    if rep.kind == "cylinder":
        return abs(rep.holonomy[1])
    return sum(abs(c.vector[1]) for c in rep.connections)


def iota_vertical(surface, rep):
    """Intersection number with the vertical foliation: sum of |x|."""
    if rep.kind == "cylinder":
        return abs(rep.holonomy[0])
    return sum(abs(c.vector[0]) for c in rep.connections)
