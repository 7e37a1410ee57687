"""Exact arithmetic on finite sums of square roots of rationals.

A value is stored as a rational combination of sqrt(s) over integer radicands
``s`` that are pairwise inequivalent modulo squares.  Two radicands r, s are
square-equivalent iff r*s is a perfect square, which is decidable with integer
square roots alone; no factoring is required.  Sums with pairwise inequivalent
radicands vanish only when every coefficient vanishes, so equality is exact
and the sign of a nonzero value is certified by interval refinement.
"""

from fractions import Fraction
from math import isqrt


def _is_square(n):
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def _sqrt_interval(s, k):
    """Enclosure of sqrt(s) with denominator 2**k, as a pair of Fractions."""
    scaled = isqrt(s << (2 * k))
    lo = Fraction(scaled, 1 << k)
    hi = Fraction(scaled + 1, 1 << k)
    return lo, hi


class AlgebraicLength:
    """A sum of rational multiples of square roots of positive integers."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        # terms: dict radicand -> Fraction coefficient, radicands pairwise
        # square-inequivalent, coefficients nonzero, radicand 1 for rationals
        self._terms = dict(terms) if terms else {}

    @staticmethod
    def zero():
        return AlgebraicLength()

    @staticmethod
    def from_rational(a):
        a = Fraction(a)
        return AlgebraicLength({1: a} if a else None)

    @staticmethod
    def sqrt_of(r):
        """sqrt(r) for a nonnegative rational r."""
        r = Fraction(r)
        if r < 0:
            raise ValueError("negative radicand")
        if r == 0:
            return AlgebraicLength()
        n = r.numerator * r.denominator
        coeff = Fraction(1, r.denominator)
        root = isqrt(n)
        if root * root == n:
            return AlgebraicLength({1: coeff * root})
        return AlgebraicLength({n: coeff})

    @staticmethod
    def norm_of(v):
        """Euclidean length of a rational vector."""
        return AlgebraicLength.sqrt_of(v[0] * v[0] + v[1] * v[1])

    def _merge_term(self, radicand, coeff):
        for s in self._terms:
            if s == radicand or _is_square(s * radicand):
                # sqrt(radicand) = isqrt(radicand*s)/s * sqrt(s)
                m = isqrt(radicand * s)
                self._terms[s] += coeff * Fraction(m, s)
                if self._terms[s] == 0:
                    del self._terms[s]
                return
        if coeff != 0:
            self._terms[radicand] = coeff

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraicLength.from_rational(other)
        out = AlgebraicLength(self._terms)
        for s, c in other._terms.items():
            out._merge_term(s, c)
        return out

    def __sub__(self, other):
        return self + other.__neg__() if isinstance(other, AlgebraicLength) \
            else self + AlgebraicLength.from_rational(-Fraction(other))

    def __neg__(self):
        return AlgebraicLength({s: -c for s, c in self._terms.items()})

    def scale(self, a):
        a = Fraction(a)
        if a == 0:
            return AlgebraicLength()
        return AlgebraicLength({s: c * a for s, c in self._terms.items()})

    def is_zero(self):
        return not self._terms

    def sign(self):
        if not self._terms:
            return 0
        k = 8
        while True:
            lo = Fraction(0)
            hi = Fraction(0)
            for s, c in self._terms.items():
                slo, shi = _sqrt_interval(s, k)
                if c >= 0:
                    lo += c * slo
                    hi += c * shi
                else:
                    lo += c * shi
                    hi += c * slo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            # value is nonzero (independent radicands), keep refining
            k *= 2

    def compare(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraicLength.from_rational(other)
        return (self - other).sign()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraicLength.from_rational(other)
        if not isinstance(other, AlgebraicLength):
            return NotImplemented
        return (self - other).is_zero()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def terms(self):
        """The radicand -> coefficient mapping (radicands square-reduced)."""
        return dict(self._terms)

    def enclosure(self, digits=12):
        """A rational interval (lo, hi) of width below 10**-digits."""
        if not self._terms:
            return Fraction(0), Fraction(0)
        target = Fraction(1, 10 ** digits)
        k = 8
        while True:
            lo = Fraction(0)
            hi = Fraction(0)
            for s, c in self._terms.items():
                slo, shi = _sqrt_interval(s, k)
                if c >= 0:
                    lo += c * slo
                    hi += c * shi
                else:
                    lo += c * shi
                    hi += c * slo
            if hi - lo < target:
                return lo, hi
            k *= 2

    def __float__(self):
        lo, hi = self.enclosure(15)
        return float((lo + hi) / 2)

    def as_rational(self):
        """The exact Fraction value, or None when irrational."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {1}:
            return self._terms[1]
        return None

    def decimal(self, digits=12):
        """Deterministic decimal enclosure string ``v±e``."""
        lo, hi = self.enclosure(digits + 2)
        mid = (lo + hi) / 2
        err = (hi - lo) / 2
        scale = 10 ** digits
        mid_s = Fraction(round(mid * scale), scale)
        shown = float(err + abs(mid - mid_s))
        return "%s±%.1e" % (("%." + str(digits) + "f") % float(mid_s), shown)

    def __repr__(self):
        if not self._terms:
            return "AlgebraicLength(0)"
        bits = []
        for s in sorted(self._terms):
            c = self._terms[s]
            bits.append("%s*sqrt(%d)" % (c, s) if s != 1 else str(c))
        return "AlgebraicLength(%s)" % " + ".join(bits)
