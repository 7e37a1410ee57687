"""Exact planar linear algebra over the rationals.

Vectors are plain pairs ``(x, y)`` whose entries are ``fractions.Fraction``
(or ``int`` in internally rescaled contexts); all predicates are sign tests
and therefore exact.
"""

from fractions import Fraction
from math import gcd

from .errors import SingularMatrix

ZERO2 = (Fraction(0), Fraction(0))


def vadd(u, v):
    return (u[0] + v[0], u[1] + v[1])


def vsub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def vneg(u):
    return (-u[0], -u[1])


def smul(a, u):
    return (a * u[0], a * u[1])


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def cmul(u, v):
    """Complex multiplication of ``u`` and ``v`` as points of R^2 = C."""
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def conj(u):
    return (u[0], -u[1])


def perp(u):
    """Rotate by a quarter turn counterclockwise."""
    return (-u[1], u[0])


def is_zero(u):
    return u[0] == 0 and u[1] == 0


def primitive(u):
    """The primitive integer vector spanning the ray of ``u``.

    Divides out denominators and common factors, preserving direction.
    """
    x, y = Fraction(u[0]), Fraction(u[1])
    if x == 0 and y == 0:
        return (0, 0)
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    a, b = int(x * den), int(y * den)
    g = gcd(abs(a), abs(b))
    return (a // g, b // g)


def incircle(a, b, c, d):
    """Sign of the incircle determinant for ccw triangle ``a b c`` and ``d``.

    Positive iff ``d`` lies strictly inside the circumcircle of ``a b c``.
    """
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    det = (adx * (bdy * cd - cdy * bd)
           - ady * (bdx * cd - cdx * bd)
           + ad * (bdx * cdy - cdx * bdy))
    return (det > 0) - (det < 0)


def sign(x):
    return (x > 0) - (x < 0)


class Mat2:
    """A 2x2 rational matrix."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def apply(self, v):
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def __mul__(self, other):
        return Mat2(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d)

    def inverse(self):
        det = self.det()
        if det == 0:
            raise SingularMatrix("matrix is singular")
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def transpose(self):
        return Mat2(self.a, self.c, self.b, self.d)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return "Mat2(%s, %s, %s, %s)" % self.entries()

    @staticmethod
    def identity():
        return Mat2(1, 0, 0, 1)

    @staticmethod
    def diagonal(a, d):
        return Mat2(a, 0, 0, d)

    @staticmethod
    def shear(s):
        return Mat2(1, s, 0, 1)


def rational_rotation(index):
    """A rational rotation by a small positive angle, from a Pythagorean triple.

    For ``index`` = n >= 1 the triple is (2n, n^2-1, n^2+1); the rotation angle
    decreases toward 0 as n grows.  A negative index gives the inverse
    (clockwise) rotation.  The determinant is exactly 1.
    """
    n = int(index)
    if n == 0:
        raise ValueError("rotation index must be nonzero")
    clockwise = n < 0
    n = abs(n)
    a, b, c = 2 * n, n * n - 1, n * n + 1
    m = Mat2(Fraction(b, c), Fraction(-a, c), Fraction(a, c), Fraction(b, c))
    return m.transpose() if clockwise else m
