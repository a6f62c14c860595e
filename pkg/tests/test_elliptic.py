from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cubic_torsion.algebra.poly import X, UniPoly, rational_roots
from cubic_torsion.classification.tables import PHI1, PHI3
from cubic_torsion.elliptic import (
    Curve,
    PointK,
    TorsionStructure,
    division_poly,
    infinity,
    lift_x_to_points,
    point_add,
    scalar_mul,
    to_short_weierstrass,
    torsion_over_K,
    torsion_over_Q,
)
from cubic_torsion.number_field import CubicField, sqrt_in_field

from oracles import lutz_nagell_torsion


def nonsingular_short():
    return st.tuples(st.integers(-50, 50), st.integers(-50, 50)).filter(lambda ab: 4 * ab[0] ** 3 + 27 * ab[1] ** 2 != 0)


# --- torsion structures ------------------------------------------------------


def test_torsion_structure_basics():
    T = TorsionStructure(2, 6)
    assert T.order == 12 and not T.is_cyclic() and str(T) == "C2xC6"
    assert TorsionStructure.parse("C2 x C6") == T
    assert TorsionStructure.parse("C13") == TorsionStructure.cyclic(13)
    assert T.count_of_exact_order(2) == 3
    assert TorsionStructure.cyclic(9).count_of_exact_order(9) == 6
    with pytest.raises(ValueError):
        TorsionStructure(2, 5)


@given(st.sampled_from(sorted(PHI3)))
def test_exact_order_counts_sum_to_group_order(T):
    assert sum(T.count_of_exact_order(d) for d in range(1, T.order + 1)) == T.order


# --- models ----------------------------------------------------------------


def test_short_model_unchanged():
    E = to_short_weierstrass(0, 0, 0, -2, 3)
    assert E.short_AB == (-2, 3)


def test_j_invariant_11a1():
    E = Curve((0, -1, 1, -10, -20))
    assert E.j_inv == Fraction(-122023936, 161051)
    # the short model has the same j: 1728 * 4A^3 / (4A^3 + 27B^2)
    A, B = E.short_AB
    assert Fraction(1728 * 4 * A**3, 4 * A**3 + 27 * B**2) == E.j_inv


def test_singular_curve_rejected():
    with pytest.raises(ValueError):
        Curve((0, 0, 0, 0, 0))


# --- points ------------------------------------------------------------------


def test_point_examples():
    E = Curve.short(0, 4)
    P = PointK(E, None, Fraction(0), Fraction(2))
    O = infinity(E)
    assert P + O == P and O + P == P
    assert P + (-P) == O
    assert scalar_mul(3, P) == O and P.order() == 3
    assert point_add(P, P) == PointK(E, None, Fraction(0), Fraction(-2))
    with pytest.raises(ValueError):
        PointK(E, None, Fraction(1), Fraction(1))


def test_points_on_different_fields_do_not_mix():
    E = Curve.short(0, 4)
    K = CubicField(X**3 - 2)
    with pytest.raises(ValueError):
        PointK(E, None, Fraction(0), Fraction(2)) + PointK(E, K, K(0), K(2))


def _some_points(E, K=None, limit=6):
    pts = []
    for x in range(-10, 30):
        pts.extend(lift_x_to_points(E, x, K))
        if len(pts) >= limit:
            break
    return pts


@settings(max_examples=40, deadline=None)
@given(nonsingular_short())
def test_group_laws(AB):
    E = Curve.short(*AB)
    pts = _some_points(E)
    assume(len(pts) >= 2)
    P, Q = pts[0], pts[1]
    R = pts[-1]
    assert P + Q == Q + P
    assert (P + Q) + R == P + (Q + R)
    for m in range(0, 5):
        for n in range(0, 5):
            assert scalar_mul(m + n, P) == scalar_mul(m, P) + scalar_mul(n, P)


def test_group_law_over_cubic_field():
    E = Curve.short(0, 2)
    K = CubicField(X**3 - 2)
    t = K.gen
    P = PointK(E, K, K(-1), K(1))
    # (theta^2)^3 + 2 = 6, which is not a square in K, so x = theta^2 lifts to nothing
    assert lift_x_to_points(E, t * t, K) == []
    R = 2 * P
    assert (R + P) - P == R
    assert sqrt_in_field(K(2)) is None


def test_lift_examples():
    E = Curve.short(0, 4)
    assert lift_x_to_points(E, 0) == sorted(
        [PointK(E, None, Fraction(0), Fraction(2)), PointK(E, None, Fraction(0), Fraction(-2))], key=PointK.sort_key
    )
    E2 = Curve.short(-1, 0)  # x^3 - x has roots 0, 1, -1
    for r in (-1, 0, 1):
        pts = lift_x_to_points(E2, r)
        assert len(pts) == 1 and pts[0].y == 0 and pts[0].order() == 2


# --- division polynomials -----------------------------------------------------


def test_division_poly_small_cases():
    E = Curve.short(-7, 11)
    A, B = E.short_AB
    assert division_poly(E, 2).psi == UniPoly((B, A, 0, 1))
    assert division_poly(E, 3).psi == UniPoly((-A * A, 12 * B, 6 * A, 0, 3))


@settings(max_examples=25, deadline=None)
@given(nonsingular_short(), st.integers(2, 9))
def test_primitive_division_roots_have_exact_order(AB, n):
    E = Curve.short(*AB)
    for x in set(rational_roots(division_poly(E, n).primitive)):
        for P in lift_x_to_points(E, x):
            assert scalar_mul(n, P).is_infinity
            for d in range(1, n):
                if n % d == 0:
                    assert not scalar_mul(d, P).is_infinity


@settings(max_examples=25, deadline=None)
@given(nonsingular_short(), st.integers(3, 12))
def test_psi_divides_by_primitive_parts(AB, n):
    E = Curve.short(*AB)
    psi = division_poly(E, n).psi
    prim = division_poly(E, n).primitive
    assert (psi % prim).is_zero()
    # degree of the primitive part: number of x-coordinates of exact order n
    exact = TorsionStructure(n, n).count_of_exact_order(n)
    assert prim.degree == exact // 2


def test_division_index_bounds():
    with pytest.raises(ValueError):
        division_poly(Curve.short(0, 1), 0)


# --- torsion ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "label, expected",
    [
        ("11a1", "C5"),
        ("14a1", "C6"),
        ("30a2", "C2xC6"),
        ("54b3", "C9"),
        ("66c1", "C10"),
        ("90c3", "C12"),
        ("210e2", "C2xC8"),
        ("15a4", "C8"),
    ],
)
def test_torsion_over_Q_examples(curve_by_label, label, expected):
    E = curve_by_label(label)
    T = torsion_over_Q(E)
    assert str(T.structure) == expected
    m, n = lutz_nagell_torsion(E.a_invariants)
    assert T.structure == TorsionStructure(m, n)
    assert T.generators[0].order() == T.structure.n
    if not T.structure.is_cyclic():
        assert T.generators[1].order() == 2


def test_torsion_over_Q_table_curves(curve_by_label):
    assert str(torsion_over_Q(curve_by_label("14a4")).structure) == "C6"
    assert str(torsion_over_Q(curve_by_label("196a1")).structure) == "C1"


def test_torsion_over_K_examples(curve_by_label):
    E = curve_by_label("11a1")
    H = torsion_over_K(E, CubicField(X**3 - X**2 + X + 1))
    assert H.structure == TorsionStructure.cyclic(10)
    assert H.generators[0].order() == 10
    E = curve_by_label("1922c1")
    H = torsion_over_K(E, CubicField(X**3 - X**2 - 10 * X + 8))
    assert H.structure == TorsionStructure(2, 14)


@settings(max_examples=25, deadline=None)
@given(nonsingular_short(), st.sampled_from([X**3 - 2, X**3 - X**2 - 2 * X + 1, X**3 - X - 1, X**3 + X**2 - 3]))
def test_torsion_over_K_contains_rational_torsion(AB, f):
    E = Curve.short(*AB)
    G = torsion_over_Q(E).structure
    H = torsion_over_K(E, CubicField(f)).structure
    assert G in PHI1 and H in PHI3
    assert H.contains(G)
    assert H.m % G.m == 0 and H.n % G.n == 0
    # every listed point really has the order it was filed under
    for q, pts in torsion_over_K(E, CubicField(f)).points_by_order.items():
        for P in pts:
            assert P.order() == q


def test_torsion_over_Q_matches_lutz_nagell_sample(bulk_records):
    for rec in bulk_records[::97]:
        T = torsion_over_Q(rec.curve()).structure
        assert (T.m, T.n) == lutz_nagell_torsion(rec.a_invariants), rec.label
