"""Built-in example surfaces and curves used by tests and the verify suites."""

from fractions import Fraction

from .curves import CombinatorialCurve
from .surface import build_surface


def square_torus():
    """Unit square torus with one marked vertex; two triangles.

    Triangle 0 is the lower-right half (0,0),(1,0),(1,1); triangle 1 the
    upper-left half (0,0),(1,1),(0,1).  All gluings are translations.
    """
    tris = [
        [(1, 0), (0, 1), (-1, -1)],
        [(1, 1), (-1, 0), (0, -1)],
    ]
    glue = [
        ((0, 0), (1, 1), -1),   # bottom <-> top
        ((0, 1), (1, 2), -1),   # right <-> left
        ((0, 2), (1, 0), -1),   # diagonal
    ]
    return build_surface(tris, glue, marks=[(0, 0)],
                         names=["lo", "hi"])


def staircase():
    """Three-square staircase: genus 2, one cone point of angle 6*pi.

    The L-shaped polygon (0,0)-(2,0)-(2,1)-(1,1)-(1,2)-(0,2) with opposite
    horizontal and vertical sides glued by translations; squares are split
    along the diagonals drawn in the left column of the source pictures.
    Triangles: a0/a1 lower-left square, b0/b1 lower-right, c0/c1 upper.
    """
    tris = [
        [(1, 0), (0, 1), (-1, -1)],    # a0: (0,0),(1,0),(1,1)
        [(1, 1), (-1, 0), (0, -1)],    # a1: (0,0),(1,1),(0,1)
        [(1, 0), (-1, 1), (0, -1)],    # b0: (1,0),(2,0),(1,1)
        [(0, 1), (-1, 0), (1, -1)],    # b1: (2,0),(2,1),(1,1)
        [(1, 0), (-1, 1), (0, -1)],    # c0: (0,1),(1,1),(0,2)
        [(0, 1), (-1, 0), (1, -1)],    # c1: (1,1),(1,2),(0,2)
    ]
    glue = [
        ((0, 1), (2, 2), -1),   # x=1, y in (0,1)
        ((0, 2), (1, 0), -1),   # diagonal of square a
        ((1, 1), (4, 0), -1),   # y=1, x in (0,1)
        ((2, 1), (3, 2), -1),   # diagonal of square b
        ((4, 1), (5, 2), -1),   # diagonal of square c
        ((0, 0), (5, 1), -1),   # bottom-left  <-> top        (label a)
        ((2, 0), (3, 1), -1),   # bottom-right <-> upper-right (label b)
        ((3, 0), (1, 2), -1),   # right        <-> lower-left  (label c)
        ((5, 0), (4, 2), -1),   # x=1, y in (1,2) <-> x=0, y in (1,2) (label d)
    ]
    return build_surface(
        tris, glue, marks=[],
        names=["a0", "a1", "b0", "b1", "c0", "c1"])


def torus_curve(surface, m, n):
    """Combinatorial (m, n) class on the square torus fixture."""
    from .trace import curve_from_ray
    if m == 0 and n == 0:
        raise ValueError("the zero class is not a curve")
    g = _gcd(abs(m), abs(n))
    m, n = m // g, n // g
    return curve_from_ray(surface, 0, (Fraction(1, 7), Fraction(1, 11)),
                          (m, n))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def staircase_vertical_cylinder_curve(surface):
    """Core class of the vertical cylinder over the right square."""
    # vertical line x = 3/2: crosses the b diagonal and the b top edge
    return CombinatorialCurve(surface, [3 * 2 + 1, 3 * 3 + 1])


def fig4_first_curve(surface):
    """Closed diagonal of the lower-left square on the staircase."""
    from .trace import pushed_loop
    return pushed_loop(surface, [(0, (1, 1))])


def fig4_second_curve(surface):
    """Diagonal of square a followed by the counter-diagonal of square b."""
    from .trace import pushed_loop
    return pushed_loop(surface, [(0, (1, 1)), (3 * 3 + 0, (-1, 1))])


def fig4_third_curve(surface):
    """Diagonal of square a followed by the counter-diagonal of square c."""
    from .trace import pushed_loop
    return pushed_loop(surface, [(0, (1, 1)), (3 * 4 + 2, (1, -1))])
