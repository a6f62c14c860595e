from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic_torsion.algebra import modp
from cubic_torsion.algebra.factor import factor_small, product_of, small_factors
from cubic_torsion.algebra.poly import (
    X,
    UniPoly,
    is_square_rational,
    poly_discriminant,
    poly_gcd,
    poly_xgcd,
    rational_roots,
    resultant,
    squarefree_part,
)
from cubic_torsion.algebra.primes import factor_int, is_prime

x = sympy.Symbol("x")


def P(*coeffs):
    return UniPoly(coeffs)


def to_sympy(p: UniPoly):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], x, domain="QQ")


small_ints = st.integers(-20, 20)
polys = st.lists(small_ints, min_size=1, max_size=6).map(UniPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


# --- arithmetic ------------------------------------------------------------


def test_gcd_examples():
    assert poly_gcd(X**2 - 1, X - 1) == X - 1
    assert poly_gcd(X**3 - 2, X**2 + 1) == 1
    assert poly_gcd(P(4, 0, 2), P(4, 0, 2)) == X**2 + 2


def test_discriminant_examples():
    assert poly_discriminant(X**3 - 2) == -108
    assert poly_discriminant(X**3 - 3 * X - 1) == 81
    assert poly_discriminant(X**2 - 1) == 4


def test_rational_roots_examples():
    assert sorted(rational_roots(X**2 - 1)) == [-1, 1]
    assert rational_roots(X**3 - 2) == []
    assert rational_roots(P(-3, 2)) == [Fraction(3, 2)]


def test_squarefree_part_examples():
    assert squarefree_part((X - 1) ** 2) == X - 1
    assert squarefree_part(X**3 - 2) == X**3 - 2
    assert squarefree_part((X**2 - 1) * (X - 1)) == X**2 - 1


def test_is_square_rational_examples():
    assert is_square_rational(49) == 7
    assert is_square_rational(-4) is None
    assert is_square_rational(Fraction(4, 9)) == Fraction(2, 3)
    assert is_square_rational(Fraction(2, 9)) is None


@given(nonzero_polys, nonzero_polys)
def test_divmod_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(nonzero_polys, nonzero_polys)
def test_gcd_matches_sympy(a, b):
    g = poly_gcd(a, b)
    assert g.lc == 1
    assert to_sympy(g) == sympy.gcd(to_sympy(a), to_sympy(b)).monic()


@given(nonzero_polys, nonzero_polys)
def test_xgcd_bezout(a, b):
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    assert (a % g).is_zero() and (b % g).is_zero()


@given(nonzero_polys, nonzero_polys)
def test_resultant_matches_sylvester_determinant(a, b):
    if a.degree < 1 or b.degree < 1:
        return
    # Sylvester determinant; sympy.resultant disagrees on sign for some degree pairs
    from sympy.polys.subresultants_qq_zz import sylvester

    expected = sylvester(to_sympy(a).as_expr(), to_sympy(b).as_expr(), x).det()
    assert resultant(a, b) == expected


@given(polys.filter(lambda p: p.degree >= 2))
def test_discriminant_matches_sympy(p):
    assert poly_discriminant(p) == sympy.discriminant(to_sympy(p))


@given(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=9), min_size=1, max_size=4), small_ints)
def test_rational_roots_recovered(roots, k):
    p = UniPoly((k if k else 1,))
    for r in roots:
        p = p * (X - r)
    assert sorted(rational_roots(p)) == sorted(roots)


@given(polys, polys)
def test_compose_evaluates(a, b):
    for t in (-2, 0, 3):
        assert a.compose(b)(t) == a(b(t))


# --- factoring ---------------------------------------------------------------


def test_small_factors_example():
    p = (X - 1) * (X**3 - 2) * (X**4 + X + 1)
    fl = small_factors(p, 3)
    assert sorted((f for f, _ in fl.factors), key=lambda f: f.degree) == [X - 1, X**3 - 2]
    assert fl.cofactor == X**4 + X + 1
    assert sympy.Poly(x**4 + x + 1).is_irreducible


def test_small_factors_irreducible_cubic_and_dmax():
    p = X**3 - X**2 - 2 * X + 1
    assert small_factors(p, 3).factors == ((p, 1),)
    fl = small_factors(X**2 + 1, 1)
    assert fl.factors == () and fl.cofactor == X**2 + 1


irreducibles = st.sampled_from(
    [X - 3, 2 * X + 1, X**2 + 1, X**2 - 2, X**3 - 2, X**3 - X - 1, X**3 + 4 * X + 9, X**4 + X + 1, X**5 - X - 1, X**6 + 3]
)


@settings(max_examples=60, deadline=None)
@given(st.lists(irreducibles, min_size=1, max_size=5, unique=True), st.integers(1, 9))
def test_factor_product_roundtrip(parts, scale):
    p = product_of(parts) * scale
    fl = small_factors(p, 3)
    assert fl.expand() == p
    expected = sorted(str(f.monic()) for f in parts if f.degree <= 3)
    assert sorted(str(f) for f, _ in fl.factors) == expected
    # sympy agrees on the irreducible factors of degree <= 3
    found = {str(f) for f, _ in fl.factors}
    oracle = {
        str(UniPoly.from_ints(list(reversed(sympy.Poly(g, x).all_coeffs()))).monic())
        for g, _ in sympy.factor_list(to_sympy(p).as_expr(), x)[1]
        if sympy.degree(g, x) <= 3
    }
    assert found == oracle


@settings(max_examples=40, deadline=None)
@given(st.lists(irreducibles, min_size=1, max_size=3), st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_factor_small_with_multiplicity(parts, mults):
    p = UniPoly((1,))
    for f, e in zip(parts, mults):
        p = p * f**e
    fl = factor_small(p, 3)
    assert fl.expand() == p


def test_small_factors_rejects_bad_input():
    with pytest.raises(ValueError):
        small_factors(X**2, 3)
    with pytest.raises(ValueError):
        small_factors(X - 1, 4)


# --- F_p arithmetic and primes -----------------------------------------------


@given(st.sampled_from([2, 3, 5, 7, 101, 65537]), st.lists(st.integers(0, 10**6), max_size=6), st.lists(st.integers(0, 10**6), min_size=1, max_size=5))
def test_modp_divmod(p, a, b):
    a, b = modp.reduce(a, p), modp.reduce(b, p)
    if not b:
        return
    q, r = modp.divmod_(a, b, p)
    assert modp.add(modp.mul(q, b, p), r, p) == a
    assert len(r) < len(b)


@given(st.sampled_from([3, 5, 7, 11, 13]), st.lists(st.integers(0, 12), min_size=2, max_size=7))
def test_modp_factor_roundtrip(p, a):
    f = modp.monic(modp.reduce(a, p), p)
    if len(f) < 2 or not modp.is_squarefree(f, p):
        return
    facs, rest = modp.factor_squarefree(f, p)
    assert rest == [1]
    prod_ = [1]
    for g in facs:
        prod_ = modp.mul(prod_, g, p)
    assert prod_ == f
    for g in facs:
        assert sympy.Poly(list(reversed(g)), x, modulus=p).is_irreducible


def test_modulus_uses_object_dtype_for_large_primes():
    p = 2**61 - 1
    mod = modp.Modulus([1, 0, 1], p)
    assert mod.dtype is object
    r = modp.Modulus.to_list(mod.powmod([0, 1], 2))
    assert r == [p - 1]


@given(st.integers(-(10**12), 10**12).filter(lambda n: n != 0))
def test_factor_int(n):
    f = factor_int(n)
    out = 1
    for q, e in f.items():
        assert is_prime(q)
        out *= q**e
    assert out == abs(n)
