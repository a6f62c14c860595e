"""Low-degree factors of rational polynomials.

Only factors of degree <= 3 are ever extracted: reduce modulo a good prime,
lift the small modular factors p-adically and recombine subsets whose degrees
sum to at most 3.  Everything of larger degree stays in an unfactored cofactor.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, prod

from . import _intpoly, modp
from .poly import UniPoly, poly_gcd, squarefree_decomposition
from .primes import primes_from

PRIMES_TO_TRY = 6


class TooManyModularFactors(ArithmeticError):
    """Subset recombination would exceed the configured cap."""


@dataclass(frozen=True)
class FactorList:
    unit: Fraction
    factors: tuple  # of (monic irreducible UniPoly, multiplicity)
    cofactor: UniPoly  # monic; 1 when everything was factored

    def expand(self) -> UniPoly:
        out = self.cofactor * self.unit
        for f, e in self.factors:
            out = out * f**e
        return out

    def of_degree(self, d: int) -> list:
        return [f for f, _ in self.factors if f.degree == d]


def _sym(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _mod(a, m):
    return _intpoly.trim([c % m for c in a])


def _divmod_monic(a, b, m):
    """Division by a monic b over Z/m."""
    r = [c % m for c in a]
    db = len(b) - 1
    if len(r) <= db:
        return [], _intpoly.trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] % m
        if not c:
            continue
        q[k - db] = c
        base = k - db
        for i in range(db):
            r[base + i] = (r[base + i] - c * b[i]) % m
        r[k] = 0
    return _intpoly.trim(q), _intpoly.trim(r[:db])


def hensel_lift_factor(f, g, p, modulus):
    """Lift a monic factor g of f mod p (coprime to its cofactor) to f mod `modulus`.

    `modulus` must be a power of p.  The cofactor itself is never lifted: the
    correction is r * (f div g)^{-1} mod g, with the inverse refined by Newton.
    """
    if len(g) == len(f):
        inv = pow(f[-1], -1, modulus)
        return [c * inv % modulus for c in f]
    q, _ = _divmod_monic(f, g, p)
    _, u, _ = modp.xgcd(q, g, p)
    m = p
    while m < modulus:
        m2 = min(m * m, modulus)
        q, r = _divmod_monic(f, g, m2)
        qu = _divmod_monic(_intpoly.mul(q, u), g, m2)[1]
        u = _divmod_monic(_intpoly.mul(u, _intpoly.sub([2], qu)), g, m2)[1]
        delta = _divmod_monic(_intpoly.mul(r, u), g, m2)[1]
        g = _mod(_intpoly.add(g, delta), m2)
        if len(g) < 2 or g[-1] != 1:
            raise ArithmeticError("lifted factor lost its leading term")
        m = m2
    return g


def _good_primes(f, count, start=5, tries=80):
    out = []
    for i, p in enumerate(primes_from(start)):
        if i >= tries or len(out) >= count:
            break
        if f[-1] % p == 0:
            continue
        if modp.is_squarefree(modp.reduce(f, p), p):
            out.append(p)
    return out


def _subset_degree_sums(degrees, dmax):
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums if s + d <= dmax}
    sums.discard(0)
    return sums


def _lift_modulus(f, p, dmax):
    bound = abs(f[-1]) * max(comb(dmax, j) for j in range(dmax + 1)) * _intpoly.l2_norm_bound(f)
    m = p
    while m <= 2 * bound:
        m *= m
    return m


def _candidate(lifted, subset, lc, m):
    g = [1]
    for i in subset:
        g = _mod(_intpoly.mul(g, lifted[i]), m)
    return _intpoly.primitive([_sym(c * lc, m) for c in g])


def _plausible(f, cand):
    # cheap necessary conditions before trial division
    if f[0] and cand[0] and f[0] % cand[0]:
        return False
    return f[-1] % cand[-1] == 0


def small_factors(p: UniPoly, dmax: int) -> FactorList:
    """Monic irreducible factors of degree <= dmax of a squarefree p, plus cofactor."""
    if not 1 <= dmax <= 3:
        raise ValueError("dmax must be 1, 2 or 3")
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = p.lc
    f = p.to_primitive_ints()
    if len(f) <= 1:
        return FactorList(unit, (), UniPoly((1,)))
    found = []
    if f[0] == 0:
        found.append([0, 1])
        f = f[1:]
        if f[0] == 0:
            raise ValueError("input is not squarefree")
    if len(f) == 2:
        found.append(f)
        f = [1]
    if len(f) > 1:
        primes = _good_primes(f, PRIMES_TO_TRY)
        if not primes:
            if poly_gcd(UniPoly(f), UniPoly(f).derivative()).degree > 0:
                raise ValueError("input is not squarefree")
            raise ArithmeticError("no good prime found")
        found_more, f = _small_factors_primitive(f, dmax, primes)
        found.extend(found_more)
    factors = sorted(
        ((UniPoly(g).monic(), 1) for g in found),
        key=lambda t: (t[0].degree, t[0].coeffs),
    )
    return FactorList(unit, tuple(factors), UniPoly(f).monic())


def _small_factors_primitive(f, dmax, primes):
    best = None
    allowed = None
    for p in primes:
        facs, _ = modp.factor_squarefree(f, p, dmax)
        sums = _subset_degree_sums([len(g) - 1 for g in facs], dmax)
        allowed = sums if allowed is None else allowed & sums
        if not allowed:
            return [], f
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
    p, facs = best
    m = _lift_modulus(f, p, dmax)
    lifted = [hensel_lift_factor(f, g, p, m) for g in facs]
    pool = list(range(len(lifted)))
    found = []
    size = 1
    while size <= len(pool):
        hit = False
        for subset in combinations(pool, size):
            deg = sum(len(lifted[i]) - 1 for i in subset)
            if deg not in allowed or deg > len(f) - 1:
                continue
            cand = _candidate(lifted, subset, f[-1], m)
            if len(cand) - 1 != deg or not _plausible(f, cand):
                continue
            q = _intpoly.exact_div(f, cand)
            if q is None:
                continue
            found.append(cand)
            f = q
            pool = [i for i in pool if i not in subset]
            hit = True
            break
        if not hit:
            size += 1
    return found, f


def divisors_of_degree(p: UniPoly, d: int, max_modular: int = 24, require=None) -> list:
    """All monic rational divisors of exact degree d of a squarefree p.

    Not restricted to irreducible divisors.  Raises TooManyModularFactors when
    the best of a few good primes splits p into more than max_modular factors.
    `require`, when given, filters lifted candidates before trial division.
    """
    f = p.to_primitive_ints()
    n = len(f) - 1
    if d < 1 or d > n:
        return []
    if d == n:
        return [UniPoly(f).monic()]
    primes = _good_primes(f, 3)
    if not primes:
        raise ValueError("input is not squarefree")
    best = None
    for q in primes:
        facs, _ = modp.factor_squarefree(f, q)
        if best is None or len(facs) < len(best[1]):
            best = (q, facs)
    q, facs = best
    if len(facs) > max_modular:
        raise TooManyModularFactors(f"{len(facs)} modular factors mod {q}")
    m = _lift_modulus(f, q, d)
    lifted = [hensel_lift_factor(f, g, q, m) for g in facs]
    degs = [len(g) - 1 for g in lifted]
    out = []
    idx = list(range(len(lifted)))

    def search(start, remaining, chosen):
        if remaining == 0:
            cand = _candidate(lifted, chosen, f[-1], m)
            if len(cand) - 1 == d and _plausible(f, cand) and _intpoly.exact_div(f, cand) is not None:
                g = UniPoly(cand).monic()
                if require is None or require(g):
                    out.append(g)
            return
        for j in range(start, len(idx)):
            if degs[j] <= remaining:
                search(j + 1, remaining - degs[j], chosen + [j])

    search(0, d, [])
    out.sort(key=lambda g: g.coeffs)
    return out


def factor_small(p: UniPoly, dmax: int) -> FactorList:
    """small_factors for arbitrary (not necessarily squarefree) p, with multiplicities."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    factors = []
    cofactor = UniPoly((1,))
    for part, mult in squarefree_decomposition(p):
        fl = small_factors(part, dmax)
        factors.extend((g, mult) for g, _ in fl.factors)
        cofactor = cofactor * fl.cofactor**mult
    factors.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))
    return FactorList(p.lc, tuple(factors), cofactor)


def product_of(factors) -> UniPoly:
    return prod((f for f in factors), start=UniPoly((1,)))
