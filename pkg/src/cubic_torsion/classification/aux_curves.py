"""Bounded searches for rational points on the auxiliary curves.

A bounded search can only ever find points; it never proves there are none.
Every curve is searched through an integral model V^2 = U^3 + c2 U^2 + c1 U + c0,
whose affine rational points have U = n/d^2 and V = m/d^3 in lowest terms.
For each d the admissible n are sieved by quadratic residuosity modulo a few
small moduli, and the survivors are checked exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable

import numpy as np

FIRST_MODULUS = 64 * 9 * 5 * 7
SECOND_MODULUS = 11 * 13
FILTER_PRIMES = (17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)


@dataclass(frozen=True)
class AuxCurve:
    key: str
    equation: str
    model: tuple  # (c0, c1, c2) of the integral cubic model
    # U/V on the model -> X/Y on the curve, or None when there is no image
    to_curve: Callable
    # scale relating numerators of U to numerators of X, for the search range
    numerator_scale: int
    extra_points: tuple


def _identity(u, v):
    return u, v


def _quartic(sign):
    def back(u, v):
        # X = sign*6/U and V = 6Y/X^2; U = 0 has no partner on the quartic
        if u == 0:
            return None
        x = Fraction(sign * 6) / u
        return x, v * x * x / 6

    return back


AUX_CURVES = {
    "x3-6x2+13x": AuxCurve("x3-6x2+13x", "Y^2 = X^3 - 6X^2 + 13X", (0, 13, -6), _identity, 1, ()),
    "x3+6x2+13x": AuxCurve("x3+6x2+13x", "Y^2 = X^3 + 6X^2 + 13X", (0, 13, 6), _identity, 1, ()),
    "x3-27": AuxCurve("x3-27", "Y^2 = X^3 - 27", (-27, 0, 0), _identity, 1, ()),
    "x3+27": AuxCurve("x3+27", "Y^2 = X^3 + 27", (27, 0, 0), _identity, 1, ()),
    # the point at infinity of the model corresponds to X = 0
    "6x(1-6x2-12x3)": AuxCurve(
        "6x(1-6x2-12x3)",
        "Y^2 = 6X(1 - 6X^2 - 12X^3)",
        (-2592, -216, 0),
        _quartic(1),
        6,
        ((Fraction(0), Fraction(0)),),
    ),
    "-6x(1-6x2-12x3)": AuxCurve(
        "-6x(1-6x2-12x3)",
        "Y^2 = -6X(1 - 6X^2 - 12X^3)",
        (2592, -216, 0),
        _quartic(-1),
        6,
        ((Fraction(0), Fraction(0)),),
    ),
}


def on_curve(key: str, x: Fraction, y: Fraction) -> bool:
    """Direct check on the original equation."""
    if key.startswith("x3"):
        c0, c1, c2 = AUX_CURVES[key].model
        return y * y == x**3 + c2 * x * x + c1 * x + c0
    sign = -1 if key.startswith("-") else 1
    return y * y == sign * 6 * x * (1 - 6 * x * x - 12 * x**3)


def _height(q: Fraction) -> int:
    return max(abs(q.numerator), q.denominator)


def _real_root_floor(c) -> float:
    """Largest real root of U^3 + c2 U^2 + c1 U + c0, as a float lower bound."""
    roots = np.roots([1, c[2], c[1], c[0]])
    real = [r.real for r in roots if abs(r.imag) < 1e-9]
    return max(real)


def _square_table(m: int) -> np.ndarray:
    t = np.zeros(m, dtype=bool)
    t[(np.arange(m, dtype=np.int64) ** 2) % m] = True
    return t


_TABLES = {m: _square_table(m) for m in (FIRST_MODULUS, SECOND_MODULUS) + FILTER_PRIMES}


def _residue_pattern(c, d2: int, m: int) -> np.ndarray:
    """Mask over n mod m: is n^3 + c2 n^2 d2 + c1 n d2^2 + c0 d2^3 a square mod m."""
    k = np.arange(m, dtype=np.int64)
    D = d2 % m
    val = (k * k) % m
    val = (val * ((k + c[2] * D) % m)) % m
    val = (val + (c[1] * D * D % m) * k) % m
    val = (val + c[0] * pow(D, 3, m)) % m
    return _TABLES[m][val]


def _admissible_residues(c, d2: int) -> tuple:
    """Residues n mod FIRST_MODULUS * SECOND_MODULUS passing both square tests, by CRT."""
    m0, m1 = FIRST_MODULUS, SECOND_MODULUS
    r0 = np.flatnonzero(_residue_pattern(c, d2, m0)).astype(np.int64)
    r1 = np.flatnonzero(_residue_pattern(c, d2, m1)).astype(np.int64)
    inv = pow(m0, -1, m1)
    t = ((r1[None, :] - r0[:, None]) * inv) % m1
    res = (r0[:, None] + m0 * t).ravel()
    res.sort()
    return res, m0 * m1


def search_model(c, d_max: int, n_max: int) -> list:
    """Affine points (U, V), V >= 0, with U = n/d^2, d <= d_max, |n| <= n_max."""
    c0, c1, c2 = c
    r = _real_root_floor(c)
    found = []
    for d in range(1, d_max + 1):
        d2 = d * d
        lo = max(-n_max, int(np.floor(r * d2)) - 1)
        hi = n_max
        if lo > hi:
            continue
        res, period = _admissible_residues(c, d2)
        first = lo - lo % period
        blocks = np.arange(first, hi + 1, period, dtype=np.int64)
        cand = (blocks[:, None] + res[None, :]).ravel()
        cand = cand[(cand >= lo) & (cand <= hi)]
        for p in FILTER_PRIMES:
            if not len(cand):
                break
            cand = cand[_residue_pattern(c, d2, p)[cand % p]]
        for n in cand.tolist():
            if gcd(n, d) != 1:
                continue
            val = n**3 + c2 * n * n * d2 + c1 * n * d2 * d2 + c0 * d2**3
            if val < 0:
                continue
            m = isqrt(val)
            if m * m == val:
                found.append((Fraction(n, d2), Fraction(m, d2 * d)))
    return found


def aux_curve_search(key: str, height_bound: int) -> list:
    """Rational points (X, Y) on the named curve with height(X) <= height_bound."""
    if height_bound < 1:
        raise ValueError("height bound must be at least 1")
    if key not in AUX_CURVES:
        raise ValueError(f"unknown auxiliary curve {key!r}; choose from {sorted(AUX_CURVES)}")
    curve = AUX_CURVES[key]
    d_max = isqrt(height_bound)
    n_max = curve.numerator_scale * height_bound
    points = set(p for p in curve.extra_points)
    for u, v in search_model(curve.model, d_max, n_max):
        for vv in {v, -v}:
            image = curve.to_curve(u, vv)
            if image is None:
                continue
            x, y = image
            if _height(x) <= height_bound:
                assert on_curve(key, x, y)
                points.add((x, y))
    return sorted(points)


# The only points the classification argument allows on each curve.
EXPECTED_POINTS = {
    "x3-6x2+13x": ((Fraction(0), Fraction(0)),),
    "x3+6x2+13x": ((Fraction(0), Fraction(0)),),
    "x3-27": ((Fraction(3), Fraction(0)),),
    "x3+27": ((Fraction(-3), Fraction(0)),),
    "6x(1-6x2-12x3)": ((Fraction(0), Fraction(0)),),
    "-6x(1-6x2-12x3)": ((Fraction(0), Fraction(0)),),
}
