"""Small-prime helpers and integer factorization."""

from itertools import count

import sympy


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    return sympy.isprime(n)


def primes_from(start: int):
    """Primes >= start in increasing order."""
    for n in count(max(start, 2)):
        if is_prime(n):
            yield n


def factor_int(n: int) -> dict:
    """Prime factorization of |n| as {p: e}."""
    n = abs(n)
    if n <= 1:
        return {}
    return {int(p): int(e) for p, e in sympy.factorint(n).items()}
