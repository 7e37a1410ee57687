"""Low-level exact machinery: corridor development, funnels, segment tracing.

Everything here works on an integer-rescaled copy of the surface (see
``Surface.integer_model``) so that all predicates are integer sign tests.
A corridor is a sequence of gates; gate ``h`` means the strip exits the
triangle owning ``h`` through it, entering ``tri(opp(h))``.
"""

from fractions import Fraction

from .linalg import cross, dot, vadd, vsub, smul


class IntModel:
    """Integer-vector view of a surface, shared by the exact kernels."""

    __slots__ = ("surface", "scale", "vecs")

    def __init__(self, surface):
        self.surface = surface
        self.scale, self.vecs = surface.integer_model()

    def vec(self, h):
        return self.vecs[h]

    def corner_pos(self, h):
        j = h % 3
        t = h - j
        if j == 0:
            return (0, 0)
        if j == 1:
            return self.vecs[t]
        return vadd(self.vecs[t], self.vecs[t + 1])

    def transition(self, h):
        """(lam, off): partner-triangle coords -> this triangle's coords."""
        s = self.surface
        k = s.opp(h)
        lam = -s.sign(h)
        end_of_h = vadd(self.corner_pos(h), self.vecs[h])
        start_of_k = self.corner_pos(k)
        return lam, vsub(end_of_h, smul(lam, start_of_k))


def chart_apply(chart, p):
    lam, off = chart
    return (lam * p[0] + off[0], lam * p[1] + off[1])


def chart_compose(outer, inner):
    lam1, off1 = outer
    lam2, off2 = inner
    return (lam1 * lam2, (lam1 * off2[0] + off1[0], lam1 * off2[1] + off1[1]))


CHART_ID = (1, (0, 0))


def develop_corridor(model, gates):
    """Charts C_0..C_k; C_i maps the i-th triangle's coords to C_0 coords."""
    charts = [CHART_ID]
    cur = CHART_ID
    for h in gates:
        cur = chart_compose(cur, model.transition(h))
        charts.append(cur)
    return charts


def corridor_portals(model, gates, charts):
    """Developed gate segments [(A_i, B_i)]; A = start of the gate."""
    out = []
    for i, h in enumerate(gates):
        c = charts[i]
        a = chart_apply(c, model.corner_pos(h))
        b = chart_apply(c, vadd(model.corner_pos(h), model.vec(h)))
        out.append((a, b))
    return out


def _area(a, b, c):
    return cross(vsub(b, a), vsub(c, a))


def funnel(p, portals, q):
    """Shortest path from p to q crossing the portal segments in order.

    Portals are (A, B) developed segments; walking through the corridor the
    right endpoint is A and the left endpoint is B.  Returns the interior
    path vertices as (point, portal_index, is_left), including exact
    grazings of portal endpoints, in path order.
    """
    pr = [a for a, _ in portals] + [q]
    pl = [b for _, b in portals] + [q]
    n = len(pr)
    bends = []
    apex, ai = p, -1
    rpt, ri = p, -1
    lpt, li = p, -1
    i = 0
    while i < n:
        r, l = pr[i], pl[i]
        if r != rpt and r != apex:
            if rpt == apex or _area(apex, rpt, r) >= 0:
                if lpt == apex or _area(apex, lpt, r) < 0:
                    rpt, ri = r, i
                else:
                    bends.append((lpt, li, True))
                    apex, ai = lpt, li
                    rpt, ri = apex, ai
                    lpt, li = apex, ai
                    i = ai + 1
                    continue
        if l != lpt and l != apex:
            if lpt == apex or _area(apex, lpt, l) <= 0:
                if rpt == apex or _area(apex, rpt, l) > 0:
                    lpt, li = l, i
                else:
                    bends.append((rpt, ri, False))
                    apex, ai = rpt, ri
                    rpt, ri = apex, ai
                    lpt, li = apex, ai
                    i = ai + 1
                    continue
        i += 1
    return _refine_grazings(p, portals, q, bends)


def _refine_grazings(p, portals, q, bends):
    """Insert portal endpoints that lie exactly on path segments as bends.

    Keeps chords free of vertices in their interiors; each grazing keeps the
    smallest portal index at which the point appears.
    """
    out = []
    prev_pt, prev_i = p, -1
    for pt, idx, is_left in bends + [(q, len(portals), True)]:
        seg = vsub(pt, prev_pt)
        hits = []
        for j in range(prev_i + 1, idx):
            for cand, left in ((portals[j][0], False), (portals[j][1], True)):
                if cand == prev_pt or cand == pt:
                    continue
                d = vsub(cand, prev_pt)
                if cross(seg, d) == 0 and 0 < dot(d, seg) < dot(seg, seg):
                    hits.append((dot(d, seg), j, cand, left))
        hits.sort(key=lambda x: (x[0], x[1]))
        for _, j, cand, left in hits:
            if out and out[-1][0] == cand and out[-1][1] <= j:
                continue
            if prev_pt == cand:
                continue
            out.append((cand, j, left))
        if idx < len(portals):
            out.append((pt, idx, is_left))
        prev_pt, prev_i = pt, idx
    return out


def bend_runs(surface, gates, portals, bends, end_index):
    """Expand funnel bends into runs (point, first_gate, last_gate, is_left).

    The run is the maximal contiguous range of gates having the bend point
    as an endpoint, clipped by the neighbouring waypoints' portal indices.
    For reduced corridors every run touches the point on a single side.
    """
    out = []
    lo_bound = 0
    for b, (pt, idx, is_left) in enumerate(bends):
        hi_bound = bends[b + 1][1] - 1 if b + 1 < len(bends) else end_index
        first = idx
        while first - 1 >= lo_bound and pt in portals[first - 1]:
            first -= 1
        last = idx
        while last + 1 <= hi_bound and pt in portals[last + 1]:
            last += 1
        out.append((pt, first, last, is_left))
        lo_bound = last + 1
    return out


def trace_in_triangle(model, tri, start, vec):
    """First exit of the ray ``start + t*vec``, t in (0, 1], from a triangle.

    Returns ("edge", h, t, point) for a crossing of the interior of edge h,
    ("corner", h, t, point) when the ray hits the corner at the start of h,
    or ("inside", None, 1, end) when the full segment stays interior.
    Coordinates are in the triangle's own chart.
    """
    best = None
    for h in model.surface.triangle_halfedges(tri):
        a = model.corner_pos(h)
        w = model.vec(h)
        denom = cross(w, vec)
        if denom == 0:
            continue
        t = Fraction(cross(w, vsub(a, start)), denom)
        s = Fraction(cross(vec, vsub(a, start)), denom)
        if t <= 0 or s < 0 or s > 1:
            continue
        if best is None or t < best[2]:
            point = vadd(start, smul(t, vec))
            if s == 0:
                best = ("corner", h, t, point)
            elif s == 1:
                best = ("corner", model.surface.next_he(h), t, point)
            else:
                best = ("edge", h, t, point)
    if best is not None and best[2] <= 1:
        return best
    return ("inside", None, Fraction(1), vadd(start, vec))
