"""Discriminants modulo rational squares, and the 9-isogeny family."""

from fractions import Fraction

from ..algebra.poly import is_square_rational
from ..elliptic import Curve

SQUARE = "square"
MINUS_SQUARE = "minus_square"
MINUS_TWO_SQUARE = "minus_two_square"
OTHER = "other"


def square_class(d) -> str:
    d = Fraction(d)
    if d == 0:
        raise ValueError("zero has no square class")
    if is_square_rational(d) is not None:
        return SQUARE
    if is_square_rational(-d) is not None:
        return MINUS_SQUARE
    if is_square_rational(-d / 2) is not None:
        return MINUS_TWO_SQUARE
    return OTHER


def discriminant_class(E: Curve) -> str:
    return square_class(E.disc)


def nine_isogeny_family(x, twist_u=1) -> tuple:
    """(A, B) of the member at parameter x, scaled by u: A = u^4 a(x), B = u^6 b(x)."""
    x, u = Fraction(x), Fraction(twist_u)
    if u == 0:
        raise ValueError("twist parameter must be nonzero")
    a = -3 * x * (x**3 - 24)
    b = 2 * (x**6 - 36 * x**3 + 216)
    return u**4 * a, u**6 * b


def nine_isogeny_family_disc(x, twist_u=1) -> Fraction:
    """Discriminant -16(4A^3 + 27B^2); equals 2^12 3^6 (x^3 - 27) u^12."""
    A, B = nine_isogeny_family(x, twist_u)
    disc = -16 * (4 * A**3 + 27 * B**2)
    if disc == 0:
        raise ValueError(f"parameter {x} gives a singular curve")
    return disc
