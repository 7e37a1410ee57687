"""Exact accumulation and comparison of angles at cone points.

Corner angles of rational triangles are irrational, but every angle handled
here is assembled from sectors between explicit rational direction vectors.
An angle is stored as ``half_turns * pi + residual`` where the residual lies
in [0, pi) and is represented by an ordered pair of primitive integer
directions; all comparisons against multiples of pi reduce to sign tests.
"""

from .linalg import cross, dot, cmul, conj, primitive, vneg


class AngleDatum:
    """An exact nonnegative angle: k half-turns plus a residual sector."""

    __slots__ = ("half_turns", "start", "end")

    def __init__(self, half_turns=0, start=(1, 0), end=None):
        self.half_turns = half_turns
        self.start = primitive(start)
        self.end = self.start if end is None else primitive(end)

    def copy(self):
        return AngleDatum(self.half_turns, self.start, self.end)

    def _base(self):
        return self.start if self.half_turns % 2 == 0 else vneg(self.start)

    def residual_is_zero(self):
        base = self._base()
        return cross(base, self.end) == 0 and dot(base, self.end) > 0

    def add_sector(self, a, b):
        """Add the ccw angle from direction ``a`` to ``b``, any value in [0, 2pi)."""
        c = cross(a, b)
        d = dot(a, b)
        if c == 0:
            if d > 0:
                return self
            self._add_pi()
            return self
        if c > 0:
            self._add_acute(a, b)
        else:
            self._add_pi()
            self._add_acute(vneg(a), b)
        return self

    def _add_pi(self):
        self.half_turns += 1

    def _add_acute(self, a, b):
        # rotate the running end direction by the angle from a to b, in (0, pi)
        w = cmul(b, conj(a))
        new_end = primitive(cmul(self.end, w))
        base = self._base()
        c = cross(base, new_end)
        d = dot(base, new_end)
        if c > 0:
            self.end = new_end
        elif c < 0:
            self.half_turns += 1
            self.end = new_end
        elif d < 0:
            self.half_turns += 1
            self.end = vneg(base)
        else:
            raise AssertionError("sector accumulation left the residual range")

    def add(self, other):
        """Add another angle datum."""
        self.half_turns += other.half_turns
        self.add_sector(other.start, other.end)
        return self

    def cmp_half_turns(self, m):
        """Compare against m*pi; returns -1, 0 or 1."""
        if self.half_turns > m:
            return 1
        if self.half_turns == m:
            return 0 if self.residual_is_zero() else 1
        if self.half_turns == m - 1 and not self.residual_is_zero():
            return -1
        return -1

    def is_multiple_of_pi(self):
        return self.residual_is_zero()

    def exact_half_turns(self):
        """The integer k with angle == k*pi, or None if not a multiple."""
        return self.half_turns if self.residual_is_zero() else None

    def complement_to(self, cone_half_turns):
        """The angle c*pi minus this one, for this angle <= c*pi."""
        if self.residual_is_zero():
            k = cone_half_turns - self.half_turns
            if k < 0:
                raise ValueError("complement of an angle exceeding the cone")
            return AngleDatum(k, self.start, self.start)
        k = cone_half_turns - self.half_turns - 1
        if k < 0:
            raise ValueError("complement of an angle exceeding the cone")
        return AngleDatum(k, self.end, vneg(self._base()))

    def cmp(self, other):
        """Total order on angle data (compare absolute angle sizes)."""
        if self.half_turns != other.half_turns:
            return 1 if self.half_turns > other.half_turns else -1
        a = self.residual_is_zero()
        b = other.residual_is_zero()
        if a and b:
            return 0
        if a:
            return -1
        if b:
            return 1
        # both residuals in (0, pi); rebase onto a common reference via the
        # angle between the end directions relative to their bases
        sa = self._base()
        sb = other._base()
        # residual_a vs residual_b: rotate other's figure so bases align
        w = cmul(sa, conj(sb))
        eb = cmul(other.end, w)
        c = cross(self.end, eb)
        if c == 0:
            return 0
        return -1 if c > 0 else 1

    def __repr__(self):
        return "AngleDatum(%d half-turns + sector %s->%s)" % (
            self.half_turns, self.start, self.end)


def corner_angle(outgoing, incoming_reversed):
    """The angle of a triangle corner between two rays, as an AngleDatum.

    Both arguments point away from the corner; the angle is the ccw sector
    from ``outgoing`` to ``incoming_reversed`` and lies in (0, pi).
    """
    if cross(outgoing, incoming_reversed) <= 0:
        raise ValueError("corner rays do not span a positive acute-side sector")
    return AngleDatum().add_sector(outgoing, incoming_reversed)
