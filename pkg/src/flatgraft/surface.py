"""Triangulated half-translation surfaces with exact rational edge vectors.

A surface is a collection of positively oriented triangles together with a
pairing of all oriented edges.  Half-edge ``h`` of triangle ``t`` is the
integer ``3*t + j`` for ``j`` in 0..2; the corner at the start of ``h`` is
identified with ``h`` itself.  Paired edges carry a sign: ``-1`` for a
translation gluing (the partner vector is the negation) and ``+1`` for a
semi-translation gluing (the partner vector is equal, transition z -> -z + c).
"""

from fractions import Fraction
from math import gcd

from .alglength import AlgebraicLength
from .angles import AngleDatum, corner_angle
from .errors import (AngleNotHalfTurnMultiple, DisconnectedSurface,
                     GaussBonnetViolation, MarkedAngleTooSmall,
                     NonPositiveTriangle, SingularMatrix, UnmarkedAngleTooSmall,
                     UnpairedEdge, VectorMismatch)
from .linalg import cross, smul, vadd, vneg, vsub


def _frac_vec(v):
    return (Fraction(v[0]), Fraction(v[1]))


class Chart:
    """Affine transition z -> lam*z + off with lam = +1 or -1."""

    __slots__ = ("lam", "off")

    def __init__(self, lam=1, off=(Fraction(0), Fraction(0))):
        self.lam = lam
        self.off = off

    def apply(self, z):
        return vadd(smul(self.lam, z), self.off)

    def apply_vec(self, v):
        return smul(self.lam, v)

    def compose(self, other):
        """self after other: z -> self(other(z))."""
        return Chart(self.lam * other.lam,
                     vadd(smul(self.lam, other.off), self.off))

    def inverse(self):
        return Chart(self.lam, smul(-self.lam, self.off))

    def __repr__(self):
        return "Chart(%+d, %s)" % (self.lam, (self.off,))


class Surface:
    """Immutable triangulated half-translation surface."""

    def __init__(self, vecs, opp, signs, marked_corners=(), names=None):
        nh = len(vecs)
        if nh % 3 != 0:
            raise ValueError("half-edge count must be a multiple of 3")
        self._vecs = tuple(_frac_vec(v) for v in vecs)
        self._opp = tuple(opp)
        self._signs = tuple(signs)
        self._n_tris = nh // 3
        if names is None:
            names = tuple("t%d" % i for i in range(self._n_tris))
        self._names = tuple(names)
        self._validate_combinatorics()
        self._validate_geometry()
        self._build_vertex_classes()
        marked = set()
        for h in marked_corners:
            marked.add(self._corner_class[h])
        self._marked = frozenset(marked)
        self._validate_angles()
        self._holonomy = None
        self._int_cache = None

    # -- basic accessors ---------------------------------------------------

    def num_triangles(self):
        return self._n_tris

    def num_half_edges(self):
        return 3 * self._n_tris

    def triangle_name(self, t):
        return self._names[t]

    def triangle_index(self, name):
        return self._names.index(name)

    def vec(self, h):
        return self._vecs[h]

    def opp(self, h):
        return self._opp[h]

    def sign(self, h):
        return self._signs[h]

    @staticmethod
    def tri_of(h):
        return h // 3

    @staticmethod
    def next_he(h):
        return h - h % 3 + (h + 1) % 3

    @staticmethod
    def prev_he(h):
        return h - h % 3 + (h + 2) % 3

    def triangle_halfedges(self, t):
        return (3 * t, 3 * t + 1, 3 * t + 2)

    def corner_class(self, h):
        """Vertex class index of the corner at the start of half-edge h."""
        return self._corner_class[h]

    def vertex_classes(self):
        return self._classes

    def marked_classes(self):
        return self._marked

    def is_marked(self, cls):
        return cls in self._marked

    def ccw_corner(self, h):
        """Next corner counterclockwise around the vertex at the start of h."""
        return self._opp[self.prev_he(h)]

    def cw_corner(self, h):
        return self.next_he(self._opp[h])

    def corner_pos(self, h):
        """Position of corner h in its own triangle chart (corner 0 at 0)."""
        j = h % 3
        t = h - j
        if j == 0:
            return (Fraction(0), Fraction(0))
        if j == 1:
            return self._vecs[t]
        return vadd(self._vecs[t], self._vecs[t + 1])

    def transition(self, h):
        """Chart of tri(opp(h)) expressed inside the chart of tri(h)."""
        k = self._opp[h]
        lam = -self._signs[h]
        end_of_h = vadd(self.corner_pos(h), self._vecs[h])
        start_of_k = self.corner_pos(k)
        return Chart(lam, vsub(end_of_h, smul(lam, start_of_k)))

    # -- validation ----------------------------------------------------------

    def _validate_combinatorics(self):
        nh = self.num_half_edges()
        seen = [False] * nh
        for h in range(nh):
            k = self._opp[h]
            if not (0 <= k < nh) or k == h:
                raise UnpairedEdge("half-edge %d has no valid partner" % h)
            if self._opp[k] != h:
                raise UnpairedEdge("pairing is not an involution at %d" % h)
            if self._signs[h] not in (1, -1):
                raise VectorMismatch("sign at %d must be +1 or -1" % h)
            if self._signs[k] != self._signs[h]:
                raise VectorMismatch("signs not symmetric on pair (%d,%d)" % (h, k))
            seen[h] = True
        if not all(seen):
            raise UnpairedEdge("some oriented edges are unpaired")
        # connectivity over triangles
        if self._n_tris:
            stack = [0]
            reach = {0}
            while stack:
                t = stack.pop()
                for h in self.triangle_halfedges(t):
                    t2 = self.tri_of(self._opp[h])
                    if t2 not in reach:
                        reach.add(t2)
                        stack.append(t2)
            if len(reach) != self._n_tris:
                raise DisconnectedSurface("gluing does not yield one surface")

    def _validate_geometry(self):
        for t in range(self._n_tris):
            a, b, c = (self._vecs[3 * t], self._vecs[3 * t + 1],
                       self._vecs[3 * t + 2])
            if vadd(vadd(a, b), c) != (0, 0):
                raise NonPositiveTriangle(
                    "triangle %s edge vectors do not close up" % self._names[t])
            if cross(a, b) <= 0:
                raise NonPositiveTriangle(
                    "triangle %s is not positively oriented" % self._names[t])
        for h in range(self.num_half_edges()):
            k = self._opp[h]
            expect = self._vecs[h] if self._signs[h] == 1 else vneg(self._vecs[h])
            if self._vecs[k] != expect:
                raise VectorMismatch(
                    "paired vectors disagree on (%d,%d): %s vs %s (sign %+d)"
                    % (h, k, self._vecs[h], self._vecs[k], self._signs[h]))

    def _build_vertex_classes(self):
        nh = self.num_half_edges()
        cls = [-1] * nh
        classes = []
        for h0 in range(nh):
            if cls[h0] != -1:
                continue
            idx = len(classes)
            orbit = []
            h = h0
            while cls[h] == -1:
                cls[h] = idx
                orbit.append(h)
                h = self.ccw_corner(h)
            if h != h0:
                raise UnpairedEdge("corner orbit is not a cycle at %d" % h0)
            classes.append(tuple(orbit))
        self._corner_class = tuple(cls)
        self._classes = tuple(classes)

    def corner_angle_datum(self, h):
        return corner_angle(self._vecs[h], vneg(self._vecs[self.prev_he(h)]))

    def _class_angle(self, idx):
        total = AngleDatum()
        for h in self._classes[idx]:
            total.add(self.corner_angle_datum(h))
        return total

    def _validate_angles(self):
        self._angles = []
        for idx in range(len(self._classes)):
            total = self._class_angle(idx)
            k = total.exact_half_turns()
            if k is None:
                raise AngleNotHalfTurnMultiple(
                    "vertex class %d has a cone angle that is not a multiple "
                    "of pi" % idx)
            marked = idx in self._marked
            if marked and k < 1:
                raise MarkedAngleTooSmall("marked class %d has angle below pi" % idx)
            if not marked and k < 2:
                raise UnmarkedAngleTooSmall(
                    "unmarked class %d has cone angle %d*pi < 2*pi" % (idx, k))
            self._angles.append(k)
        self._angles = tuple(self._angles)
        expected = 4 * self.genus() - 4
        full = sum(k - 2 for k in self._angles)
        if full != expected:
            raise GaussBonnetViolation(
                "sum of (angle/pi - 2) is %d, expected %d" % (full, expected))

    # -- invariants ------------------------------------------------------------

    def euler_characteristic(self):
        v = len(self._classes)
        e = self.num_half_edges() // 2
        f = self._n_tris
        return v - e + f

    def genus(self):
        chi = self.euler_characteristic()
        if chi % 2 != 0:
            raise GaussBonnetViolation("odd Euler characteristic")
        return (2 - chi) // 2

    def area(self):
        total = Fraction(0)
        for t in range(self._n_tris):
            total += cross(self._vecs[3 * t], self._vecs[3 * t + 1])
        return total / 2

    def class_angle_half_turns(self, idx):
        return self._angles[idx]

    def cone_points(self):
        """Per vertex class: (class index, AngleDatum, half-turns, marked)."""
        out = []
        for idx in range(len(self._classes)):
            out.append((idx, self._class_angle(idx), self._angles[idx],
                        idx in self._marked))
        return out

    def stratum_signature(self):
        """Sorted multiset of (half_turns, marked) plus the holonomy label.

        Regular unmarked vertices of angle 2*pi are omitted.
        """
        entries = []
        for idx, k in enumerate(self._angles):
            marked = idx in self._marked
            if k == 2 and not marked:
                continue
            entries.append((k, marked))
        entries.sort()
        return StratumSignature(tuple(entries), self.holonomy())

    def holonomy(self):
        """+1 iff per-triangle sign flips can turn every gluing into -1."""
        if self._holonomy is None:
            state = [None] * self._n_tris
            state[0] = 0
            stack = [0]
            ok = True
            while stack and ok:
                t = stack.pop()
                for h in self.triangle_halfedges(t):
                    t2 = self.tri_of(self._opp[h])
                    want = state[t] ^ (1 if self._signs[h] == 1 else 0)
                    if state[t2] is None:
                        state[t2] = want
                        stack.append(t2)
                    elif state[t2] != want:
                        ok = False
                        break
            self._holonomy = 1 if ok else -1
        return self._holonomy

    # -- deformation -------------------------------------------------------------

    def apply_linear(self, m):
        """A new surface with every edge vector replaced by ``m`` times it."""
        det = m.det()
        if det == 0:
            raise SingularMatrix("cannot deform by a singular matrix")
        vecs = [m.apply(v) for v in self._vecs]
        if det > 0:
            marked = [h for h in range(self.num_half_edges())
                      if self._corner_class[h] in self._marked]
            return Surface(vecs, self._opp, self._signs, marked, self._names)
        # orientation repair: reverse every triangle, edge j -> slot 2-j
        nh = self.num_half_edges()
        remap = [0] * nh
        for h in range(nh):
            remap[h] = h - h % 3 + (2 - h % 3)
        new_vecs = [None] * nh
        new_opp = [0] * nh
        new_signs = [0] * nh
        for h in range(nh):
            new_vecs[remap[h]] = vneg(vecs[h])
            new_opp[remap[h]] = remap[self._opp[h]]
            new_signs[remap[h]] = self._signs[h]
        # corner at start of old edge j sits at start of new edge (3-j)%3
        marked = []
        for h in range(nh):
            if self._corner_class[h] in self._marked:
                j = h % 3
                marked.append(h - j + (3 - j) % 3)
        return Surface(new_vecs, new_opp, new_signs, marked, self._names)

    # -- integer rescaling (fast exact predicates) ---------------------------------

    def integer_model(self):
        """(scale, vectors) with vectors = scale * vec as integer pairs."""
        if self._int_cache is None:
            denom = 1
            for v in self._vecs:
                denom = denom * v[0].denominator // gcd(denom, v[0].denominator)
                denom = denom * v[1].denominator // gcd(denom, v[1].denominator)
            ivecs = tuple((int(v[0] * denom), int(v[1] * denom))
                          for v in self._vecs)
            self._int_cache = (denom, ivecs)
        return self._int_cache

    # -- misc ---------------------------------------------------------------------

    def marked_corner_ids(self):
        return tuple(h for h in range(self.num_half_edges())
                     if self._corner_class[h] in self._marked)

    def __repr__(self):
        return "Surface(%d triangles, genus %d, area %s)" % (
            self._n_tris, self.genus(), self.area())


class StratumSignature:
    """Multiset of cone angles in half-turn units with marks, plus holonomy."""

    __slots__ = ("entries", "holonomy")

    def __init__(self, entries, holonomy):
        self.entries = tuple(sorted(entries))
        self.holonomy = holonomy

    def angle_multiset(self):
        return tuple(k for k, _ in self.entries)

    def excess_sum(self):
        return sum(k - 2 for k, _ in self.entries)

    def __eq__(self, other):
        return (isinstance(other, StratumSignature)
                and self.entries == other.entries
                and self.holonomy == other.holonomy)

    def __hash__(self):
        return hash((self.entries, self.holonomy))

    def __repr__(self):
        inner = ",".join(("%dpi%s" % (k, "*" if m else "")) for k, m in self.entries)
        return "(%s;%+d)" % (inner, self.holonomy)


def build_surface(triangles, gluings, marks=(), names=None):
    """Assemble and validate a surface from triangle and gluing data.

    ``triangles``: list of three edge vectors each (counterclockwise).
    ``gluings``: iterable of ((ti, ei), (tj, ej), sign).
    ``marks``: iterable of (ti, corner index).
    """
    n = len(triangles)
    if names is None:
        names = ["t%d" % i for i in range(n)]
    vecs = []
    for tri in triangles:
        if len(tri) != 3:
            raise NonPositiveTriangle("each triangle needs three edge vectors")
        vecs.extend(_frac_vec(v) for v in tri)
    nh = 3 * n
    opp = [-1] * nh
    signs = [0] * nh
    for (ti, ei), (tj, ej), sgn in gluings:
        h, k = 3 * ti + ei, 3 * tj + ej
        if h == k:
            raise UnpairedEdge("edge (%d,%d) glued to itself" % (ti, ei))
        if opp[h] != -1 or opp[k] != -1:
            raise UnpairedEdge("edge used in more than one gluing")
        opp[h] = k
        opp[k] = h
        signs[h] = signs[k] = int(sgn)
    for h in range(nh):
        if opp[h] == -1:
            t, e = divmod(h, 3)
            raise UnpairedEdge("edge %s.%d is unpaired" % (names[t], e))
    marked = [3 * ti + ci for ti, ci in marks]
    return Surface(vecs, opp, signs, marked, names)
