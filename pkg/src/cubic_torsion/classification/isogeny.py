"""Rational isogenies of small degree, certified by kernel polynomials."""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from ..algebra.factor import TooManyModularFactors, divisors_of_degree, product_of
from ..algebra.poly import UniPoly
from ..elliptic import Curve, division_poly, primitive_factors

SUPPORTED_DEGREES = (2, 3, 5, 7, 9, 13)
MAX_MODULAR_FACTORS = 24


class IsogenyUndetermined(ArithmeticError):
    """The kernel search was cut off before reaching a decision."""


@dataclass(frozen=True)
class IsogenyReport:
    degrees: frozenset
    kernel_polys: dict = field(compare=False)
    undetermined: frozenset = frozenset()


def _duplication_stable(E: Curve, h: UniPoly) -> bool:
    """Whether x -> x(2P) maps the roots of h into roots of h."""
    A, B = E.A, E.B
    num = UniPoly((A * A, -8 * B, -2 * A, 0, 1))
    den = UniPoly((4 * B, 4 * A, 0, 4))
    num, den = num % h, den % h
    # den^d * h(num / den) reduced mod h, by Horner on the homogenized form
    d = h.degree
    acc = UniPoly((0,))
    den_pow = [UniPoly((1,))]
    for _ in range(d):
        den_pow.append((den_pow[-1] * den) % h)
    num_pow = UniPoly((1,))
    for i in range(d + 1):
        acc = (acc + num_pow * den_pow[d - i] * h[i]) % h
        num_pow = (num_pow * num) % h
    return acc.is_zero()


def certify_kernel(E: Curve, n: int, h: UniPoly) -> bool:
    """h is monic of the right degree, divides primitive(n), and is duplication stable."""
    if h.lc != 1:
        return False
    if n == 2:
        return h.degree == 1 and E.rhs(-h[0]) == 0
    if h.degree != (3 if n == 9 else (n - 1) // 2):
        return False
    if not (division_poly(E, n).primitive % h).is_zero():
        return False
    return _duplication_stable(E, h)


def _kernel_from_small(E: Curve, n: int, target: int) -> Optional[UniPoly]:
    fl = primitive_factors(E, n)
    facs = [f for f, _ in fl.factors]
    for size in range(1, len(facs) + 1):
        for subset in combinations(facs, size):
            if sum(f.degree for f in subset) != target:
                continue
            h = product_of(subset)
            if _duplication_stable(E, h):
                return h
    return None


def rational_isogeny(E: Curve, n: int) -> Optional[UniPoly]:
    """Monic kernel polynomial of a rational cyclic n-isogeny, or None.

    For n = 9 the polynomial has degree 3 and vanishes on the order-9 points
    of the kernel.  For n = 13 the search may raise IsogenyUndetermined.
    """
    if n not in SUPPORTED_DEGREES:
        raise ValueError(f"isogeny degree must be one of {SUPPORTED_DEGREES}")
    if n == 2:
        lin = primitive_factors(E, 2).of_degree(1)
        return lin[0] if lin else None
    target = 3 if n == 9 else (n - 1) // 2
    h = _kernel_from_small(E, n, target)
    if h is not None or n != 13:
        return h
    # an orbit of size 6 would be an irreducible sextic factor
    cof = primitive_factors(E, 13).cofactor
    if cof.degree < 6:
        return None
    try:
        candidates = divisors_of_degree(cof, 6, max_modular=MAX_MODULAR_FACTORS)
    except TooManyModularFactors as exc:
        raise IsogenyUndetermined(str(exc)) from exc
    for h in candidates:
        if _duplication_stable(E, h):
            return h
    return None


def two_independent_3_isogenies(E: Curve) -> bool:
    return len(primitive_factors(E, 3).of_degree(1)) >= 2


def isogeny_report(E: Curve, degrees=SUPPORTED_DEGREES) -> IsogenyReport:
    found = {}
    undetermined = set()
    for n in degrees:
        try:
            h = rational_isogeny(E, n)
        except IsogenyUndetermined:
            undetermined.add(n)
            continue
        if h is not None:
            found[n] = h
    return IsogenyReport(frozenset(found), found, frozenset(undetermined))
