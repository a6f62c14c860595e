"""Polynomials over F_p as lists of residues, lowest degree first.

Only what the factoring code needs: Euclid, powering modulo a fixed modulus,
distinct-degree and equal-degree splitting.  Coefficients are kept reduced in
[0, p).
"""

import random

import numpy as np

from . import _intpoly


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(a, p):
    return trim([c % p for c in a])


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a, b, p):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return trim([c % p for c in out])


def scale(a, k, p):
    k %= p
    return trim([c * k % p for c in a]) if k else []


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero mod p")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) <= db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] % p
        if c == 0:
            continue
        c = c * inv % p
        q[k - db] = c
        base = k - db
        for i in range(db + 1):
            r[base + i] = (r[base + i] - c * b[i]) % p
    return trim(q), trim(r[:db])


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def gcd(a, b, p):
    a = reduce(a, p)
    b = reduce(b, p)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = reduce(a, p), reduce(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def derivative(a, p):
    return trim([i * a[i] % p for i in range(1, len(a))])


def is_squarefree(a, p):
    d = derivative(a, p)
    if not d:
        return False
    return len(gcd(a, d, p)) == 1


class Modulus:
    """Fast multiplication modulo a fixed monic f over F_p.

    Reduction uses the precomputed table of x^k mod f for deg f <= k <= 2 deg f - 2,
    evaluated with numpy int64 matrix products while deg f * p^2 < 2^62, and
    with Python integers in object arrays beyond that.
    """

    def __init__(self, f, p):
        self.p = p
        self.f = monic(reduce(f, p), p)
        self.n = len(self.f) - 1
        n = self.n
        self.dtype = np.int64 if max(n, 1) * p * p < 2**62 else object
        self._table = None
        if n >= 2:
            rows = []
            # x^n mod f = -(f_0 + ... + f_{n-1} x^{n-1})
            cur = [(-c) % p for c in self.f[:n]]
            rows.append(cur)
            for _ in range(n - 2):
                top = cur[-1]
                nxt = [0] + cur[:-1]
                if top:
                    nxt = [(nxt[i] - top * self.f[i]) % p for i in range(n)]
                rows.append(nxt)
                cur = nxt
            self._table = np.array(rows, dtype=self.dtype)

    def reduce_array(self, a):
        n = self.n
        if len(a) <= n:
            return a % self.p
        low = a[:n].copy()
        high = a[n:]
        low += high @ self._table[: len(high)]
        return low % self.p

    def mulmod(self, a, b):
        """a, b: coefficient arrays of length n."""
        return self.reduce_array(np.convolve(a, b) % self.p)

    def to_array(self, a):
        out = np.zeros(self.n, dtype=self.dtype)
        r = rem(a, self.f, self.p) if len(a) > self.n else a
        out[: len(r)] = r
        return out

    def powmod(self, a, e):
        result = self.to_array([1])
        base = self.to_array(a)
        while e:
            if e & 1:
                result = self.mulmod(result, base)
            e >>= 1
            if e:
                base = self.mulmod(base, base)
        return result

    @staticmethod
    def to_list(arr):
        return trim([int(c) for c in arr])


def distinct_degree(f, p, dmax=None):
    """Distinct-degree factorization of a monic squarefree f.

    Returns a list of (d, g_d) where g_d is the product of the irreducible
    factors of degree d, for d <= dmax.  A leftover whose factors all have
    degree > dmax is returned as (None, rest).
    """
    f = monic(reduce(f, p), p)
    if dmax is None:
        dmax = len(f) - 1
    out = []
    rest = f
    d = 0
    mod = Modulus(f, p)
    h = [0, 1]
    while d < dmax and 2 * (d + 1) <= len(rest) - 1:
        d += 1
        h = Modulus.to_list(mod.powmod(h, p))
        g = gcd(rest, sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((d, g))
            rest = divmod_(rest, g, p)[0]
    deg_rest = len(rest) - 1
    if deg_rest >= 1:
        if 2 * (d + 1) > deg_rest and deg_rest <= dmax:
            out.append((deg_rest, rest))
        else:
            out.append((None, rest))
    return out


def equal_degree(g, d, p, rng=None):
    """Split a monic squarefree product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = len(g) - 1
    if n == d:
        return [g]
    if n == 0:
        return []
    if d == 1 and p < 512:
        roots = [r for r in range(p) if _intpoly.evaluate(g, r) % p == 0]
        return [[(-r) % p, 1] for r in roots]
    rng = rng or random.Random(p * 1000003 + n)
    mod = Modulus(g, p)
    e = (p**d - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = trim(a)
        if len(a) < 2:
            continue
        b = Modulus.to_list(mod.powmod(a, e))
        h = gcd(g, sub(b, [1], p), p)
        if 1 < len(h) < len(g):
            other = divmod_(g, h, p)[0]
            return equal_degree(h, d, p, rng) + equal_degree(monic(other, p), d, p, rng)


def factor_squarefree(f, p, dmax=None):
    """Monic irreducible factors of a squarefree f mod p of degree <= dmax.

    Returns (factors, rest) where rest is the monic product of the factors of
    degree > dmax.
    """
    factors = []
    rest = [1]
    for d, g in distinct_degree(f, p, dmax):
        if d is None:
            rest = g
        else:
            factors.extend(equal_degree(g, d, p))
    factors.sort(key=lambda q: (len(q), q))
    return factors, rest
