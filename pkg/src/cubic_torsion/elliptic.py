"""Rational elliptic curves, their points over Q and over cubic fields, and torsion."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from .algebra import _intpoly
from .algebra.factor import FactorList, small_factors
from .algebra.poly import UniPoly, is_square_rational
from .algebra.primes import factor_int
from .number_field import CubicField, NFElement, min_poly, roots_in_field, sqrt_in_field

PROBE_Q = (2, 4, 8, 3, 9, 5, 7)
PROBE_K = (2, 4, 8, 3, 9, 5, 7, 13)
MAX_DIVISION_INDEX = 21


@dataclass(frozen=True, order=True)
class TorsionStructure:
    """C_m x C_n with m | n."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.n % self.m:
            raise ValueError(f"invalid torsion structure C{self.m} x C{self.n}")

    @classmethod
    def cyclic(cls, n: int) -> "TorsionStructure":
        return cls(1, n)

    @classmethod
    def parse(cls, text: str) -> "TorsionStructure":
        s = text.replace(" ", "").replace("×", "x").upper().replace("X", "x")
        parts = s.split("x")
        try:
            ns = [int(p[1:]) for p in parts if p.startswith("C")]
        except ValueError:
            ns = []
        if len(ns) != len(parts) or not 1 <= len(ns) <= 2:
            raise ValueError(f"cannot parse torsion structure {text!r}")
        return cls(1, ns[0]) if len(ns) == 1 else cls(ns[0], ns[1])

    @property
    def order(self) -> int:
        return self.m * self.n

    def is_cyclic(self) -> bool:
        return self.m == 1

    def count_of_exact_order(self, q: int) -> int:
        """Number of elements of order exactly q."""
        total = 0
        for d in range(1, q + 1):
            if q % d == 0:
                total += _mobius(q // d) * gcd(self.m, d) * gcd(self.n, d)
        return total

    def contains(self, other: "TorsionStructure") -> bool:
        """Whether `other` embeds as a subgroup."""
        return self.m % other.m == 0 and self.n % other.n == 0

    def as_list(self) -> list:
        return [self.m, self.n]

    def __str__(self):
        return f"C{self.n}" if self.m == 1 else f"C{self.m}xC{self.n}"


def _mobius(n: int) -> int:
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


@dataclass(frozen=True, eq=False)
class Curve:
    """A rational elliptic curve given by integral a-invariants.

    Arithmetic happens on the integral short model y^2 = x^3 + A x + B,
    obtained by the usual change of variables (scaled by 6, then reduced).
    """

    a_invariants: tuple
    label: Optional[str] = None
    A: int = field(init=False)
    B: int = field(init=False)
    disc: int = field(init=False)
    j_inv: Fraction = field(init=False)
    _cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        a1, a2, a3, a4, a6 = (int(a) for a in self.a_invariants)
        object.__setattr__(self, "a_invariants", (a1, a2, a3, a4, a6))
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if disc == 0:
            raise ValueError(f"singular curve {list(self.a_invariants)}")
        A, B = _reduce_short(-27 * c4, -54 * c6)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "disc", disc)
        object.__setattr__(self, "j_inv", Fraction(c4**3, disc))

    @classmethod
    def short(cls, A: int, B: int, label=None) -> "Curve":
        return cls((0, 0, 0, A, B), label)

    @property
    def short_AB(self) -> tuple:
        return self.A, self.B

    @property
    def short_disc(self) -> int:
        return -16 * (4 * self.A**3 + 27 * self.B**2)

    def rhs(self, x):
        return (x * x + self.A) * x + self.B

    def two_division_cubic(self) -> UniPoly:
        return UniPoly((self.B, self.A, 0, 1))

    def __repr__(self):
        name = self.label or list(self.a_invariants)
        return f"Curve({name}; A={self.A}, B={self.B})"


def _reduce_short(A: int, B: int):
    """Divide out u^4 | A, u^6 | B for every prime u where possible."""
    g = gcd(A, B)
    for p in sorted(factor_int(g)) if g > 1 else ():
        while A % p**4 == 0 and B % p**6 == 0:
            A //= p**4
            B //= p**6
    return A, B


def to_short_weierstrass(a1, a2, a3, a4, a6, label=None) -> Curve:
    return Curve((a1, a2, a3, a4, a6), label)


# --- points ----------------------------------------------------------------

Scalar = Union[Fraction, NFElement]


@dataclass(frozen=True, eq=False)
class PointK:
    """A point on the short model of `curve`; field None means Q."""

    curve: Curve
    field: Optional[CubicField]
    x: Optional[Scalar] = None
    y: Optional[Scalar] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __post_init__(self):
        if self.x is None:
            return
        if (self.y * self.y) != self.curve.rhs(self.x):
            raise ValueError("point is not on the curve")

    def __eq__(self, other):
        if not isinstance(other, PointK):
            return NotImplemented
        if self.curve is not other.curve or self.field != other.field:
            return False
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __add__(self, other):
        return point_add(self, other)

    def __neg__(self):
        if self.is_infinity:
            return self
        return PointK(self.curve, self.field, self.x, -self.y)

    def __sub__(self, other):
        return point_add(self, -other)

    def __rmul__(self, k: int):
        return scalar_mul(k, self)

    def sort_key(self):
        if self.is_infinity:
            return (0,)
        return (1,) + _coords(self.x) + _coords(self.y)

    def order(self, bound: int = 30) -> int:
        """Order of a torsion point; 0 if it exceeds `bound`."""
        P = self
        for k in range(1, bound + 1):
            if P.is_infinity:
                return k
            P = P + self
        return 0

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


def _coords(v) -> tuple:
    if isinstance(v, NFElement):
        return v.coords
    return (Fraction(v), Fraction(0), Fraction(0))


def infinity(curve: Curve, field: Optional[CubicField] = None) -> PointK:
    return PointK(curve, field)


def point_add(P: PointK, Q: PointK) -> PointK:
    if P.curve is not Q.curve and P.curve.short_AB != Q.curve.short_AB:
        raise ValueError("points on different curves")
    if P.field != Q.field:
        raise ValueError("points over different fields")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return PointK(P.curve, P.field)
        lam = (P.x * P.x * 3 + P.curve.A) / (P.y * 2)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return PointK(P.curve, P.field, x3, y3)


def scalar_mul(k: int, P: PointK) -> PointK:
    if k < 0:
        return scalar_mul(-k, -P)
    result = PointK(P.curve, P.field)
    base = P
    while k:
        if k & 1:
            result = point_add(result, base)
        k >>= 1
        if k:
            base = point_add(base, base)
    return result


# --- division polynomials --------------------------------------------------


@dataclass(frozen=True)
class DivisionPoly:
    n: int
    psi: UniPoly
    primitive: UniPoly


def _division_table(E: Curve):
    # f_n with psi_n = f_n for odd n and psi_n = 2y f_n for even n
    t = E._cache.get("f")
    if t is None:
        A, B = E.A, E.B
        F = [4 * B, 4 * A, 0, 4]
        F2 = _intpoly.mul(F, F)
        t = {
            0: [],
            1: [1],
            2: [1],
            3: [-A * A, 12 * B, 6 * A, 0, 3],
            4: [
                2 * (-8 * B * B - A**3),
                2 * (-4 * A * B),
                2 * (-5 * A * A),
                2 * (20 * B),
                2 * (5 * A),
                0,
                2,
            ],
        }
        t["F2"] = F2
        E._cache["f"] = t
    return t


def _f(E: Curve, n: int):
    t = _division_table(E)
    if n in t:
        return t[n]
    mul = _intpoly.mul
    m = n // 2
    if n % 2:
        a = mul(_f(E, m + 2), _cube(_f(E, m)))
        b = mul(_f(E, m - 1), _cube(_f(E, m + 1)))
        if m % 2 == 0:
            a = mul(t["F2"], a)
        else:
            b = mul(t["F2"], b)
        out = _intpoly.sub(a, b)
    else:
        a = mul(_f(E, m + 2), _square(_f(E, m - 1)))
        b = mul(_f(E, m - 2), _square(_f(E, m + 1)))
        out = mul(_f(E, m), _intpoly.sub(a, b))
    t[n] = out
    return out


def _square(a):
    return _intpoly.mul(a, a)


def _cube(a):
    return _intpoly.mul(_intpoly.mul(a, a), a)


def _psi_int(E: Curve, n: int):
    f = _f(E, n)
    if n % 2 == 0:
        return _intpoly.mul([E.B, E.A, 0, 1], f)
    return f


def _primitive_int(E: Curve, n: int):
    key = ("prim", n)
    hit = E._cache.get(key)
    if hit is not None:
        return hit
    if n == 1:
        out = [1]
    else:
        out = _psi_int(E, n)
        for d in range(2, n):
            if n % d == 0:
                # the divisor is primitive, so Gauss's lemma keeps the quotient integral
                q = _intpoly.exact_div(out, _primitive_int(E, d))
                assert q is not None, "division polynomial quotient is not exact"
                out = q
        out = _intpoly.primitive(out)
    E._cache[key] = out
    return out


def division_poly(E: Curve, n: int) -> DivisionPoly:
    if not 1 <= n <= MAX_DIVISION_INDEX:
        raise ValueError(f"division polynomial index must be in [1, {MAX_DIVISION_INDEX}]")
    return DivisionPoly(n, UniPoly(_psi_int(E, n)), UniPoly(_primitive_int(E, n)))


def primitive_factors(E: Curve, q: int) -> FactorList:
    """Cached small_factors(primitive(q), 3)."""
    key = ("factors", q)
    hit = E._cache.get(key)
    if hit is None:
        hit = small_factors(UniPoly(_primitive_int(E, q)), 3)
        E._cache[key] = hit
    return hit


# --- torsion ---------------------------------------------------------------


@dataclass(frozen=True)
class TorsionResult:
    structure: TorsionStructure
    generators: tuple
    points_by_order: dict = field(compare=False, repr=False)

    def __str__(self):
        return str(self.structure)


def lift_x_to_points(E: Curve, x, K: Optional[CubicField] = None) -> list:
    """Points (x, +-y) over K (or Q) with the given x-coordinate."""
    if K is None:
        x = Fraction(x)
        y = is_square_rational(E.rhs(x))
        if y is None:
            return []
        pts = [PointK(E, None, x, y)]
    else:
        if not isinstance(x, NFElement):
            x = K(x)
        y = sqrt_in_field(E.rhs(x))
        if y is None:
            return []
        pts = [PointK(E, K, x, y)]
    if y != 0:
        pts.append(PointK(E, K, x, -y))
    pts.sort(key=PointK.sort_key)
    return pts


def _assemble(E: Curve, K, points_by_order: dict, universe: set) -> TorsionResult:
    q_max = {}
    for q, pts in points_by_order.items():
        if pts:
            p = _prime_of(q)
            q_max[p] = max(q_max.get(p, 1), q)
    n = 1
    for v in q_max.values():
        n *= v
    m = 2 if len(points_by_order.get(2, ())) == 3 else 1
    if m == 2 and n % 2:
        raise AssertionError("full 2-torsion without an order-2 part")
    G = TorsionStructure(m, n)
    for q, pts in points_by_order.items():
        expected = G.count_of_exact_order(q)
        if len(pts) != expected:
            raise AssertionError(
                f"{E!r}: found {len(pts)} points of order {q}, structure {G} predicts {expected}"
            )
    if G not in universe:
        raise AssertionError(f"{E!r}: torsion {G} is not an admissible group")
    return TorsionResult(G, _generators(E, K, G, points_by_order, q_max), points_by_order)


def _prime_of(q: int) -> int:
    p = 2
    while q % p:
        p += 1
    return p


def _generators(E, K, G, points_by_order, q_max):
    if G.order == 1:
        return ()
    main = PointK(E, K)
    for p, q in sorted(q_max.items()):
        main = main + min(points_by_order[q], key=PointK.sort_key)
    if G.is_cyclic():
        return (main,)
    half = scalar_mul(G.n // 2, main)
    other = min((P for P in points_by_order[2] if P != half), key=PointK.sort_key)
    return (main, other)


def _phi1():
    from .classification import PHI1

    return PHI1


def _phi3():
    from .classification import PHI3

    return PHI3


def torsion_over_Q(E: Curve) -> TorsionResult:
    hit = E._cache.get("torsion_Q")
    if hit is not None:
        return hit
    by_order = {}
    for q in PROBE_Q:
        pts = []
        for f in primitive_factors(E, q).of_degree(1):
            pts.extend(lift_x_to_points(E, -f[0]))
        by_order[q] = sorted(pts, key=PointK.sort_key)
    out = _assemble(E, None, by_order, _phi1())
    E._cache["torsion_Q"] = out
    return out


def x_coordinates_in_field(E: Curve, q: int, K: CubicField) -> list:
    """Roots in K of primitive(q), rational ones included."""
    fl = primitive_factors(E, q)
    xs = [K(-f[0]) for f in fl.of_degree(1)]
    for f in fl.of_degree(3):
        xs.extend(roots_in_field(f, K))
    return xs


def torsion_over_K(E: Curve, K: CubicField) -> TorsionResult:
    by_order = {}
    for q in PROBE_K:
        pts = []
        for x in x_coordinates_in_field(E, q, K):
            deg = min_poly(x).degree
            if deg not in (1, 3):
                raise AssertionError(f"torsion x-coordinate of degree {deg}")
            pts.extend(lift_x_to_points(E, x, K))
        by_order[q] = sorted(pts, key=PointK.sort_key)
    return _assemble(E, K, by_order, _phi3())

