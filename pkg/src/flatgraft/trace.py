"""Constructing combinatorial curves by exact tracing.

``curve_from_ray`` follows a closed straight ray from a base point;
``pushed_loop`` records the crossing sequence of a chain of vertex-to-vertex
chords pushed off to its right side, rounding each vertex through the fan.
Both produce CombinatorialCurve inputs for the tightener.
"""

from fractions import Fraction

from .curves import CombinatorialCurve
from .errors import CurveError, EndpointOnVertex
from .geom import IntModel, trace_in_triangle
from .linalg import cross, dot, smul, vsub

_MAX_STEPS = 100000


def curve_from_ray(surface, tri, point, vector):
    """Crossing sequence of the closed geodesic ray from an interior point.

    The straight segment from ``point`` with displacement ``vector`` must
    close up (end at its starting point in the starting triangle, possibly
    with multiple windings) and must not meet any vertex.
    """
    model = IntModel(surface)
    scale = model.scale
    pt = (Fraction(point[0]) * scale, Fraction(point[1]) * scale)
    vec = (Fraction(vector[0]) * scale, Fraction(vector[1]) * scale)
    crossings = []
    kind, end_tri, h, hit = _ray(surface, model, tri, pt, vec, crossings)
    if kind == "corner":
        raise EndpointOnVertex("ray passes through a vertex")
    if end_tri != tri or hit != pt:
        raise CurveError("ray does not close up at its base point")
    if not crossings:
        raise CurveError("ray closes without crossing any edge")
    return CombinatorialCurve(surface, crossings)


def _step_across(model, h, hit, remaining):
    """Map a crossing point and leftover displacement into the partner chart."""
    lam, off = model.transition(h)
    new_pt = smul(lam, vsub(hit, off))
    new_vec = smul(lam, remaining)
    return new_pt, new_vec


def _ray(surface, model, tri, pt, vec, crossings, max_steps=_MAX_STEPS):
    """Trace a straight displacement, appending crossings; returns (tri, pt)."""
    cur_tri, cur_pt, cur_vec = tri, pt, vec
    for _ in range(max_steps):
        kind, h, t, hit = trace_in_triangle(model, cur_tri, cur_pt, cur_vec)
        if kind == "corner":
            return ("corner", cur_tri, h, hit)
        if kind == "inside":
            return ("inside", cur_tri, None, hit)
        crossings.append(h)
        remaining = vsub(cur_vec, vsub(hit, cur_pt))
        cur_pt, cur_vec = _step_across(model, h, hit, remaining)
        cur_tri = model.surface.tri_of(model.surface.opp(h))
    raise CurveError("ray tracing did not terminate")


def pushed_loop(surface, chords):
    """Combinatorial class of a chord chain pushed off to its right.

    ``chords`` lists (corner half-edge, direction vector): each chord leaves
    the vertex at the given corner with the given direction, which must lie
    in the corner's wedge in the right-pushed sense: strictly ccw of the
    corner's outgoing edge ray and at most its incoming-reversed ray.  The
    chord must end at a vertex.  Between chords the loop rounds the vertex
    counterclockwise through the fan on the curve's right side.
    """
    model = IntModel(surface)
    crossings = []
    arrivals = []
    for c, v in chords:
        vi = (Fraction(v[0]) * model.scale, Fraction(v[1]) * model.scale)
        _check_departure(surface, model, c, vi)
        kind, tri, h, hit = _ray(surface, model, surface.tri_of(c),
                                 model.corner_pos(c), vi, crossings)
        if kind != "corner":
            raise CurveError("chord does not end at a vertex")
        arrivals.append((len(crossings), h))
    # insert rounding gates after each arrival: from the arrival corner,
    # walk counterclockwise to the next chord's departure corner
    out = []
    pos = 0
    n = len(chords)
    for k in range(n):
        upto, arrival_corner = arrivals[k]
        out.extend(crossings[pos:upto])
        pos = upto
        target = chords[(k + 1) % n][0]
        c = arrival_corner
        guard = 0
        while c != target:
            out.append(surface.prev_he(c))
            c = surface.ccw_corner(c)
            guard += 1
            if guard > surface.num_half_edges():
                raise CurveError("rounding walk does not reach the next chord")
    return CombinatorialCurve(surface, out)


def _check_departure(surface, model, c, v):
    out_ray = model.vec(c)
    in_rev = smul(-1, model.vec(surface.prev_he(c)))
    if cross(out_ray, v) <= 0 and not (
            cross(out_ray, v) == 0 and dot(out_ray, v) > 0):
        raise CurveError("chord direction is clockwise of its corner wedge")
    c2 = cross(v, in_rev)
    if c2 < 0 or (c2 == 0 and dot(v, in_rev) < 0):
        raise CurveError("chord direction exits its corner wedge")


def trace_segment(surface, tri, point, vector):
    """Per-triangle pieces of a straight segment from an interior point.

    Returns a list of (triangle, entry point, exit point) in triangle charts
    (surface coordinates).  Raises EndpointOnVertex if the segment meets a
    vertex anywhere, including its endpoints.
    """
    model = IntModel(surface)
    scale = model.scale
    pt = (Fraction(point[0]) * scale, Fraction(point[1]) * scale)
    vec = (Fraction(vector[0]) * scale, Fraction(vector[1]) * scale)
    pieces = []
    cur_tri, cur_pt, cur_vec = tri, pt, vec
    for _ in range(_MAX_STEPS):
        kind, h, t, hit = trace_in_triangle(model, cur_tri, cur_pt, cur_vec)
        if kind == "corner":
            raise EndpointOnVertex("segment meets a vertex")
        if kind == "inside":
            pieces.append((cur_tri,
                           smul(Fraction(1, scale), cur_pt),
                           smul(Fraction(1, scale), hit)))
            return pieces
        pieces.append((cur_tri,
                       smul(Fraction(1, scale), cur_pt),
                       smul(Fraction(1, scale), hit)))
        remaining = vsub(cur_vec, vsub(hit, cur_pt))
        cur_pt, cur_vec = _step_across(model, h, hit, remaining)
        cur_tri = surface.tri_of(surface.opp(h))
    raise CurveError("segment tracing did not terminate")
