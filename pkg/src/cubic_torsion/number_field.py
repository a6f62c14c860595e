"""Cubic number fields Q[x]/(f) and their elements in the power basis."""

import threading
from fractions import Fraction
from math import isqrt, lcm
from typing import Optional

from .algebra import _intpoly, modp
from .algebra.factor import small_factors
from .algebra.poly import (
    UniPoly,
    is_square_rational,
    poly_discriminant,
    poly_gcd,
    poly_xgcd,
    rational_roots,
)
from .algebra.primes import factor_int


class CubicField:
    """K = Q[x]/(f) for a monic irreducible integral cubic f."""

    def __init__(self, poly):
        if not isinstance(poly, UniPoly):
            poly = UniPoly(poly)
        if poly.degree != 3 or poly.lc != 1 or not poly.is_integral():
            raise ValueError(f"defining polynomial must be a monic integral cubic, got {poly}")
        if rational_roots(poly):
            raise ValueError(f"{poly} is reducible over Q")
        self.poly = poly
        c = poly.int_coeffs()
        self._c = (c[0], c[1], c[2])
        self.poly_disc = int(poly_discriminant(poly))
        self._field_disc = None
        self._integral_basis = None
        self._lock = threading.Lock()

    @classmethod
    def from_cubic(cls, cubic: UniPoly):
        """Field generated by a root of any irreducible rational cubic.

        Returns (K, alpha) where alpha is that root written in K's power basis.
        The defining polynomial is a*c(x/a)-style rescaling of the primitive
        integral form, so it stays monic and integral.
        """
        g = cubic.to_primitive_ints()
        if len(g) != 4:
            raise ValueError("not a cubic")
        a = g[3]
        monic_int = [g[0] * a * a, g[1] * a, g[2], 1]
        K = cls(UniPoly(monic_int))
        return K, K.element((0, Fraction(1, a), 0))

    @property
    def coeffs(self) -> tuple:
        """(c0, c1, c2) with f = x^3 + c2 x^2 + c1 x + c0."""
        return self._c

    def __repr__(self):
        return f"CubicField({self.poly})"

    def __eq__(self, other):
        return isinstance(other, CubicField) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __getstate__(self):
        state = dict(self.__dict__)
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def element(self, coords) -> "NFElement":
        return NFElement(self, coords)

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            if value.parent is not self and value.parent != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (tuple, list)):
            return NFElement(self, value)
        return NFElement(self, (value, 0, 0))

    @property
    def gen(self) -> "NFElement":
        return NFElement(self, (0, 1, 0))

    @property
    def one(self) -> "NFElement":
        return NFElement(self, (1, 0, 0))

    @property
    def zero(self) -> "NFElement":
        return NFElement(self, (0, 0, 0))

    @property
    def field_disc(self) -> int:
        if self._field_disc is None:
            with self._lock:
                if self._field_disc is None:
                    basis, disc = _round_two(self)
                    self._integral_basis = basis
                    self._field_disc = disc
        return self._field_disc

    @property
    def integral_basis(self) -> tuple:
        self.field_disc
        return self._integral_basis

    def is_galois(self) -> bool:
        return is_galois_cubic(self)


class NFElement:
    __slots__ = ("parent", "coords")

    def __init__(self, parent: CubicField, coords):
        self.parent = parent
        cs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coords)
        if len(cs) != 3:
            raise ValueError("need exactly three coordinates")
        self.coords = cs

    def _other(self, other) -> "NFElement":
        if isinstance(other, NFElement):
            if other.parent is not self.parent and other.parent != self.parent:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElement(self.parent, (other, 0, 0))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        a, b = self.coords, o.coords
        return NFElement(self.parent, (a[0] + b[0], a[1] + b[1], a[2] + b[2]))

    __radd__ = __add__

    def __neg__(self):
        a = self.coords
        return NFElement(self.parent, (-a[0], -a[1], -a[2]))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        a, b = self.coords, o.coords
        return NFElement(self.parent, (a[0] - b[0], a[1] - b[1], a[2] - b[2]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            a = self.coords
            return NFElement(self.parent, (a[0] * other, a[1] * other, a[2] * other))
        o = self._other(other)
        if o is NotImplemented:
            return o
        a0, a1, a2 = self.coords
        b0, b1, b2 = o.coords
        c0, c1, c2 = self.parent._c
        d0 = a0 * b0
        d1 = a0 * b1 + a1 * b0
        d2 = a0 * b2 + a1 * b1 + a2 * b0
        d3 = a1 * b2 + a2 * b1
        d4 = a2 * b2
        # x^3 = -c2 x^2 - c1 x - c0 ; x^4 = -c2 x^3 - c1 x^2 - c0 x
        if d4:
            d3 -= c2 * d4
            d2 -= c1 * d4
            d1 -= c0 * d4
        if d3:
            d2 -= c2 * d3
            d1 -= c1 * d3
            d0 -= c0 * d3
        return NFElement(self.parent, (d0, d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.is_rational():
            return NFElement(self.parent, (1 / self.coords[0], 0, 0))
        g, s, _ = poly_xgcd(self.lift(), self.parent.poly)
        assert g.degree == 0
        return self.parent.from_poly(s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in a number field")
            return self * (1 / Fraction(other))
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.parent.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.parent == other.parent and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords == (Fraction(other), 0, 0)
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.parent.poly, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not self.coords[1] and not self.coords[2]

    def lift(self) -> UniPoly:
        return UniPoly(self.coords)

    def sort_key(self):
        return self.coords

    def __repr__(self):
        return f"NFElement({self})"

    def __str__(self):
        s = str(self.lift()).replace("x", "t")
        return s

    def trace(self) -> Fraction:
        return _charpoly(self)[0]

    def norm(self) -> Fraction:
        return _charpoly(self)[2]


def _from_poly(self: CubicField, p: UniPoly) -> NFElement:
    r = p % self.poly if p.degree >= 3 else p
    return NFElement(self, (r[0], r[1], r[2]))


CubicField.from_poly = _from_poly


def _mult_matrix(a: NFElement):
    K = a.parent
    cols = [a, a * K.gen, a * K.gen * K.gen]
    # m[i][j] = i-th coordinate of a * t^j
    return [[cols[j].coords[i] for j in range(3)] for i in range(3)]


def _charpoly(a: NFElement):
    """(trace, second invariant, norm) of the multiplication-by-a matrix."""
    m = _mult_matrix(a)
    tr = m[0][0] + m[1][1] + m[2][2]
    s2 = (
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
        + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2] - m[1][2] * m[2][1]
    )
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    return tr, s2, det


def nf_arith(a: NFElement, b: NFElement, op: str) -> NFElement:
    if a.parent != b.parent:
        raise ValueError("elements of different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def min_poly(a: NFElement) -> UniPoly:
    """Monic minimal polynomial over Q; degree 1 or 3."""
    if a.is_rational():
        return UniPoly((-a.coords[0], 1))
    tr, s2, det = _charpoly(a)
    m = UniPoly((-det, s2, -tr, 1))
    # in a cubic field a non-rational element generates the whole field
    assert poly_gcd(m, m.derivative()).degree == 0, "degree-2 minimal polynomial in a cubic field"
    return m


# --- polynomials over K, coefficient lists lowest degree first -------------


def _kp_trim(a):
    while a and a[-1].is_zero():
        a.pop()
    return a


def _kp_divmod(a, b):
    r = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    if len(r) <= db:
        return [], _kp_trim(r)
    q = [None] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv
        q[k - db] = c
        if not c.is_zero():
            for i in range(db + 1):
                r[k - db + i] = r[k - db + i] - c * b[i]
    return q, _kp_trim(r[:db])


def _kp_gcd(a, b):
    a, b = _kp_trim(list(a)), _kp_trim(list(b))
    while b:
        a, b = b, _kp_divmod(a, b)[1]
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _kp_shift(p: UniPoly, K: CubicField, shift: NFElement):
    """p(x + shift) as a K[x] coefficient list."""
    acc = []
    for c in reversed(p.coeffs):
        # acc = acc * (x + shift) + c
        new = [K.zero] * (len(acc) + 1)
        for i, ai in enumerate(acc):
            new[i + 1] = new[i + 1] + ai
            new[i] = new[i] + ai * shift
        new[0] = new[0] + c
        acc = new
    return _kp_trim(acc)


def _norm_poly(p: UniPoly, K: CubicField, s: int) -> UniPoly:
    """Res_y(f(y), p(x - s*y)) by interpolation through norms N(p(x_i - s*theta))."""
    n = 3 * p.degree
    xs = list(range(n + 1))
    ys = []
    for xi in xs:
        elt = p(K(xi) - K.gen * s)
        ys.append(elt.norm() if isinstance(elt, NFElement) else Fraction(elt) ** 3)
    return _interpolate(xs, ys)


def _interpolate(xs, ys) -> UniPoly:
    # Newton divided differences
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    acc = UniPoly()
    for i in range(n - 1, -1, -1):
        acc = acc * UniPoly((-xs[i], 1)) + coef[i]
    return acc


def _disc_class_matches(cubic: UniPoly, K: CubicField) -> bool:
    return is_square_rational(poly_discriminant(cubic) / K.poly_disc) is not None


def _trager_roots(p: UniPoly, K: CubicField) -> list:
    """Roots in K of an irreducible rational cubic p."""
    s = 0
    while True:
        N = _norm_poly(p, K, s)
        if poly_gcd(N, N.derivative()).degree == 0:
            break
        s += 1
    roots = []
    shift = K.gen * s
    pk = [K(c) for c in p.coeffs]
    for Ni in small_factors(N, 3).of_degree(3):
        g = _kp_gcd(pk, _kp_shift(Ni, K, shift))
        if len(g) == 2:
            roots.append(-g[0])
    return roots


def roots_in_field(p: UniPoly, K: CubicField) -> list:
    """All roots of a squarefree rational polynomial of degree <= 3 lying in K."""
    if p.degree > 3:
        raise ValueError("roots_in_field supports degree <= 3 only")
    if p.degree < 1:
        return []
    roots = []
    rest = p.monic()
    for r in sorted(set(rational_roots(p))):
        roots.append(K(r))
        rest = rest.exact_div(UniPoly((-r, 1)))
    if rest.degree == 3 and _disc_class_matches(rest, K):
        roots.extend(_trager_roots(rest, K))
    for r in roots:
        assert p(r) == 0
    roots.sort(key=NFElement.sort_key)
    return roots


def sqrt_in_field(a: NFElement) -> Optional[NFElement]:
    """Some z in K with z^2 = a, or None."""
    K = a.parent
    if a.is_rational():
        r = is_square_rational(a.coords[0])
        return None if r is None else K(r)
    m = min_poly(a)
    m_sq = UniPoly(sum(([c, 0] for c in m.coeffs), [])[:-1])  # m(t^2)
    for c in small_factors(m_sq, 3).of_degree(3):
        for z in roots_in_field(c, K):
            if z * z == a:
                return z
    return None


def is_isomorphic(K1: CubicField, K2: CubicField) -> bool:
    if K1 == K2:
        return True
    if is_square_rational(Fraction(K1.poly_disc, K2.poly_disc)) is None:
        return False
    return bool(roots_in_field(K2.poly, K1))


def is_galois_cubic(K: CubicField) -> bool:
    """Cyclic cubic test: the discriminant is a square.

    Field and polynomial discriminants differ by a square factor, so the
    polynomial discriminant decides this without computing the maximal order.
    """
    return K.poly_disc > 0 and isqrt(K.poly_disc) ** 2 == K.poly_disc


def field_discriminant(K: CubicField) -> int:
    return K.field_disc


# --- maximal order: Dedekind criterion and the round-two enlargement -------


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _inv3(m):
    d = _det3(m)
    if d == 0:
        raise ZeroDivisionError("singular basis matrix")
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for k, r in enumerate(m) if k != i]
            minor = [[rows[a][b] for b in range(3) if b != j] for a in range(2)]
            cof[i][j] = (-1) ** (i + j) * (minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0])
    return [[Fraction(cof[j][i]) / d for j in range(3)] for i in range(3)]


def _vec_mat(v, m):
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0]))]


def hnf_rows(rows):
    """Hermite normal form (upper triangular, positive pivots) of an integer lattice in Z^3."""
    rows = [list(r) for r in rows if any(r)]
    basis = []
    ncols = 3
    for col in range(ncols):
        pivot_rows = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(pivot_rows) > 1:
            pivot_rows.sort(key=lambda r: abs(r[col]))
            piv = pivot_rows[0]
            new = [piv]
            for r in pivot_rows[1:]:
                q = r[col] // piv[col]
                rr = [a - q * b for a, b in zip(r, piv)]
                if rr[col] != 0:
                    new.append(rr)
                elif any(rr):
                    rest.append(rr)
            pivot_rows = new
        if not pivot_rows:
            raise ValueError("lattice is not of full rank")
        piv = pivot_rows[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = rest
    # reduce entries above pivots
    for j in range(ncols):
        for i in range(j):
            q = basis[i][j] // basis[j][j]
            if q:
                basis[i] = [a - q * b for a, b in zip(basis[i], basis[j])]
    return basis


def _left_kernel_mod_p(m, p):
    """Basis of {v : v * m = 0 mod p} for an r x c integer matrix m."""
    r = len(m)
    c = len(m[0]) if m else 0
    # augment [m | I] and row reduce the m part
    aug = [[x % p for x in m[i]] + [1 if j == i else 0 for j in range(r)] for i in range(r)]
    row = 0
    for col in range(c):
        piv = next((i for i in range(row, r) if aug[i][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = pow(aug[row][col], -1, p)
        aug[row] = [x * inv % p for x in aug[row]]
        for i in range(r):
            if i != row and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[row])]
        row += 1
    return [a[c:] for a in aug[row:]]


class _Order:
    """An order of K given by a Z-basis in power-basis coordinates."""

    def __init__(self, K: CubicField, basis):
        self.K = K
        self.basis = [tuple(Fraction(c) for c in b) for b in basis]
        self.inv = _inv3(self.basis)
        self.elts = [K.element(b) for b in self.basis]

    def coords(self, elt: NFElement):
        return _vec_mat(list(elt.coords), self.inv)

    def int_coords(self, elt: NFElement):
        c = self.coords(elt)
        if any(x.denominator != 1 for x in c):
            raise ArithmeticError("element is not in the order")
        return [int(x) for x in c]

    def index_det(self) -> Fraction:
        return _det3(self.basis)

    def from_coords(self, v) -> NFElement:
        return sum((e * Fraction(c) for e, c in zip(self.elts, v)), self.K.zero)


def _factor_mod_p_cubic(f_int, p):
    """Factorization of a cubic mod p as [(monic factor, exponent)] via root finding."""
    f = modp.monic(modp.reduce(f_int, p), p)
    out = []
    if p < 2048:
        roots = [r for r in range(p) if _evalp(f, r, p) == 0]
    else:
        xp = modp.Modulus.to_list(modp.Modulus(f, p).powmod([0, 1], p))
        lin = modp.gcd(f, modp.sub(xp, [0, 1], p), p)
        roots = [(-g[0]) % p for g in modp.equal_degree(lin, 1, p)] if len(lin) > 1 else []
    for r in sorted(roots):
        e = 0
        while len(f) > 1:
            q, rem = modp.divmod_(f, [(-r) % p, 1], p)
            if rem:
                break
            f = q
            e += 1
        out.append(([(-r) % p, 1], e))
    if len(f) > 1:
        out.append((f, 1))
    return out


def _evalp(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _dedekind(K: CubicField, p: int):
    """Dedekind's criterion at p.

    Returns None when Z[theta] is p-maximal, else the polynomial U with
    Z[theta] + U(theta)/p Z[theta] the enlarged order.
    """
    f = K.poly.int_coeffs()
    facs = _factor_mod_p_cubic(f, p)
    g = [1]
    h = [1]
    for fac, e in facs:
        g = modp.mul(g, fac, p)
        for _ in range(e - 1):
            h = modp.mul(h, fac, p)
    diff = _intpoly.sub(f, _intpoly.mul(g, h))
    assert all(c % p == 0 for c in diff)
    F = modp.reduce([c // p for c in diff], p)
    t = modp.gcd(modp.gcd(F, g, p), h, p) if F else modp.gcd(g, h, p)
    if len(t) <= 1:
        return None
    u = modp.divmod_(modp.reduce(f, p), t, p)[0]
    return UniPoly(u)


def _radical_basis(order: _Order, p: int):
    K = order.K
    if p > 3:
        tr = [[(order.elts[i] * order.elts[j]).trace() for j in range(3)] for i in range(3)]
        m = [[int(x) for x in row] for row in tr]
    else:
        q = p
        while q < 3:
            q *= p
        m = [order.int_coords(e**q) for e in order.elts]
    kernel = _left_kernel_mod_p(m, p)
    rows = [[p if i == j else 0 for j in range(3)] for i in range(3)] + [list(v) for v in kernel]
    return hnf_rows(rows)


def _enlarge(order: _Order, p: int) -> Optional[_Order]:
    K = order.K
    rad = _radical_basis(order, p)
    rad_inv = _inv3(rad)
    gammas = [order.from_coords(r) for r in rad]
    m = []
    for w in order.elts:
        row = []
        for g in gammas:
            c = _vec_mat(order.int_coords(w * g), rad_inv)
            if any(x.denominator != 1 for x in c):
                raise ArithmeticError("radical is not an ideal")
            row.extend(int(x) % p for x in c)
        m.append(row)
    kernel = _left_kernel_mod_p(m, p)
    if not kernel:
        return None
    rows = [[p if i == j else 0 for j in range(3)] for i in range(3)] + [list(v) for v in kernel]
    h = hnf_rows(rows)
    new_basis = []
    for r in h:
        elt = order.from_coords([Fraction(x, p) for x in r])
        new_basis.append(elt.coords)
    return _Order(K, new_basis)


def _round_two(K: CubicField):
    order = _Order(K, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    for p, e in sorted(factor_int(K.poly_disc).items()):
        if e < 2:
            continue
        u = _dedekind(K, p)
        if u is None:
            continue
        ue = K.from_poly(u) / p
        rows = []
        for w in order.elts:
            rows.append([Fraction(c) for c in order.coords(w)])
            rows.append(order.coords(ue * w))
        den = 1
        for r in rows:
            for c in r:
                den = lcm(den, c.denominator)
        h = hnf_rows([[int(c * den) for c in r] for r in rows])
        order = _Order(K, [order.from_coords([Fraction(x, den) for x in r]).coords for r in h])
        while True:
            bigger = _enlarge(order, p)
            if bigger is None:
                break
            order = bigger
    d = order.index_det()
    disc = Fraction(K.poly_disc) * d * d
    assert disc.denominator == 1
    return tuple(order.basis), int(disc)
