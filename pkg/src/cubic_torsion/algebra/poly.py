"""Univariate polynomials over Q with exact Fraction coefficients."""

from fractions import Fraction
from math import isqrt, lcm
from typing import Iterable, Optional

from . import _intpoly, modp
from .primes import primes_from


class UniPoly:
    """Immutable polynomial over Q, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    def __reduce__(self):
        return (UniPoly, (self.coeffs,))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly((other,))

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = UniPoly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return UniPoly(), self
        inv = 1 / other.lc
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c = c * inv
            q[k - db] = c
            for i in range(db + 1):
                r[k - db + i] -= c * other.coeffs[i]
        return UniPoly(q), UniPoly(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        """Horner evaluation; x may be any ring element supporting + and *."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return Fraction(0) if acc is None else acc

    def derivative(self) -> "UniPoly":
        return UniPoly(i * self.coeffs[i] for i in range(1, len(self.coeffs)))

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def to_primitive_ints(self) -> list:
        """Primitive integer multiple with positive leading coefficient."""
        if self.is_zero():
            return []
        den = lcm(*(c.denominator for c in self.coeffs))
        return _intpoly.primitive([int(c * den) for c in self.coeffs])

    @classmethod
    def from_ints(cls, coeffs) -> "UniPoly":
        return cls(coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integral coefficients")
        return [int(c) for c in self.coeffs]

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


X = UniPoly.x()


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q; gcd(a, 0) = monic(a) and gcd(0, 0) = 0."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    g = _intpoly.gcd_primitive(a.to_primitive_ints(), b.to_primitive_ints())
    return UniPoly(g).monic()


def poly_xgcd(a: UniPoly, b: UniPoly):
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = UniPoly((1,)), UniPoly()
    t0, t1 = UniPoly(), UniPoly((1,))
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """Resultant by the Euclidean recursion over Q."""
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    res = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return res * b.lc**da
        r = a % b
        if r.is_zero():
            return Fraction(0)
        if da * db % 2:
            res = -res
        res *= b.lc ** (da - r.degree)
        a, b = b, r


def poly_discriminant(p: UniPoly) -> Fraction:
    n = p.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return Fraction(1)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(p, p.derivative()) / p.lc


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree < 1:
        return UniPoly((1,))
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: UniPoly):
    """Yun's algorithm: monic squarefree, pairwise coprime (s_i, i) with p = lc * prod s_i^i."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    out = []
    f = p.monic()
    if f.degree < 1:
        return out
    d = f.derivative()
    a = poly_gcd(f, d)
    b = f.exact_div(a)
    c = d.exact_div(a)
    e = c - b.derivative()
    i = 1
    while b.degree >= 1:
        g = poly_gcd(b, e)
        if g.degree >= 1:
            out.append((g, i))
        b = b.exact_div(g)
        c = e.exact_div(g)
        e = c - b.derivative()
        i += 1
    return out


def is_square_rational(q) -> Optional[Fraction]:
    """Nonnegative rational square root of q, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def is_square_int(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _good_prime(f, start=5, tries=60):
    """First prime >= start with lc(f) a unit and f squarefree mod p."""
    for i, p in enumerate(primes_from(start)):
        if i >= tries:
            return None
        if f[-1] % p == 0:
            continue
        if modp.is_squarefree(modp.reduce(f, p), p):
            return p
    return None


def _simple_rational_roots(f, p):
    """Rational roots of a primitive integer f that is squarefree mod p.

    Roots mod p are Newton-lifted p-adically and reconstructed as lc*r,
    which is an integer for every rational root r.
    """
    lc = f[-1]
    fp = modp.monic(modp.reduce(f, p), p)
    xp = modp.Modulus.to_list(modp.Modulus(fp, p).powmod([0, 1], p))
    lin = modp.gcd(fp, modp.sub(xp, [0, 1], p), p)
    if len(lin) <= 1:
        return []
    residues = [int(c[0]) * -1 % p for c in modp.equal_degree(lin, 1, p)]
    bound = abs(lc) * _intpoly.cauchy_bound_num(f)
    modulus = p
    while modulus <= 2 * bound:
        modulus *= modulus
    df = _intpoly.derivative(f)
    roots = []
    for r in residues:
        m = p
        while m < modulus:
            m = min(m * m, modulus)
            r = (r - _intpoly.evaluate(f, r) * pow(_intpoly.evaluate(df, r), -1, m)) % m
        u = r * lc % modulus
        if u > modulus // 2:
            u -= modulus
        cand = Fraction(u, lc)
        if _eval_homogeneous(f, cand) == 0:
            roots.append(cand)
    return roots


def _eval_homogeneous(f, r: Fraction) -> int:
    a, b = r.numerator, r.denominator
    n = len(f) - 1
    acc = 0
    bp = 1
    for i in range(n, -1, -1):
        acc += f[i] * a ** i * bp
        bp *= b
    return acc


def rational_roots(p: UniPoly) -> list:
    """All rational roots with multiplicity, sorted."""
    if p.is_zero():
        raise ValueError("rational roots of the zero polynomial")
    f = p.to_primitive_ints()
    roots = []
    k = 0
    while k < len(f) and f[k] == 0:
        k += 1
    roots.extend([Fraction(0)] * k)
    f = f[k:]
    if len(f) <= 1:
        return sorted(roots)
    prime = _good_prime(f)
    if prime is None:
        sqf = UniPoly(f).exact_div(poly_gcd(UniPoly(f), UniPoly(f).derivative())).to_primitive_ints()
        prime = _good_prime(sqf)
        if prime is None:
            raise ArithmeticError("no good prime found for the squarefree part")
    else:
        sqf = f
    for r in _simple_rational_roots(sqf, prime):
        lin = [-r.numerator, r.denominator]
        q = _intpoly.exact_div(f, lin)
        while q is not None:
            roots.append(r)
            f = q
            q = _intpoly.exact_div(f, lin)
    return sorted(roots)
