"""Dense integer polynomials as plain lists, lowest degree first.

These helpers sit under the hot paths (division polynomials, Hensel lifting,
trial division) where wrapping every coefficient in a Fraction is too slow.
"""

from math import gcd


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def sub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def scale(a, k):
    if k == 0:
        return []
    return [k * c for c in a]


def mul(a, b):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


def content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    """Divide out the content and make the leading coefficient positive."""
    a = trim(list(a))
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def exact_div(a, b):
    """Quotient of a by b over Z; None if b does not divide a exactly."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) < len(b):
        return [] if not trim(a) else None
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c == 0:
            continue
        qc, r = divmod(c, lb)
        if r:
            return None
        q[k - db] = qc
        base = k - db
        for i in range(db + 1):
            a[base + i] -= qc * b[i]
    if any(a[:db]):
        return None
    return q


def pseudo_rem(a, b):
    """lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for i in range(db + 1):
            r[shift + i] -= c * b[i]
        trim(r)
    return r


def gcd_primitive(a, b):
    """Primitive gcd of two integer polynomials via the primitive PRS."""
    a = primitive(a)
    b = primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a, b = b, primitive(r)
    return a


def cauchy_bound_num(a):
    """Integer M with every complex root of a bounded by M in absolute value."""
    lc = abs(a[-1])
    m = max((abs(c) for c in a[:-1]), default=0)
    return 1 + -(-m // lc)


def l2_norm_bound(a):
    """Integer upper bound for the euclidean norm of the coefficient vector."""
    from math import isqrt

    s = sum(c * c for c in a)
    r = isqrt(s)
    return r if r * r == s else r + 1
