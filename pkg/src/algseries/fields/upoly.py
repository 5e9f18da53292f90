"""Dense univariate polynomials over an arbitrary field, lowest degree first.

Coefficients only need ``+ - * /``, truthiness and ``==``; both base-field
rational functions and tower elements qualify.
"""
from __future__ import annotations


def trim(a: list) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def add(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i < len(a) and i < len(b):
            out.append(a[i] + b[i])
        else:
            out.append(a[i] if i < len(a) else b[i])
    return trim(out)


def neg(a):
    return [-c for c in a]


def sub(a, b):
    return add(a, neg(b))


def mul(a, b, zero):
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return trim(out)


def scale(a, c):
    return trim([x * c for x in a]) if c else []


def divmod_(a, b):
    """Quotient and remainder; b must have an invertible leading coefficient."""
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    inv_lead = 1 / b[-1] if not hasattr(b[-1], "inv") else b[-1].inv()
    q = [None] * (len(a) - len(b) + 1)
    r = list(a)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] * inv_lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] = r[k + j] - c * y
    zero = b[-1] - b[-1]
    q = [x if x is not None else zero for x in q]
    return trim(q), trim(r[: len(b) - 1])


def monic(a):
    a = trim(a)
    if not a:
        return a
    lc = a[-1]
    inv = lc.inv() if hasattr(lc, "inv") else 1 / lc
    return [c * inv for c in a]


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_(a, b)
        a, b = b, r
    return monic(a)


def xgcd(a, b, zero, one):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, zero))
        t0, t1 = t1, sub(t0, mul(q, t1, zero))
    if not r0:
        return [], [], []
    lc = r0[-1]
    inv = lc.inv() if hasattr(lc, "inv") else 1 / lc
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def derivative(a):
    out = []
    for i in range(1, len(a)):
        c = a[i]
        term = c
        for _ in range(i - 1):
            term = term + c
        out.append(term)
    return trim(out)


def evaluate(a, x, zero):
    acc = zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def powmod(a, n: int, m, zero, one):
    result = [one]
    base = divmod_(a, m)[1]
    while n:
        if n & 1:
            result = divmod_(mul(result, base, zero), m)[1]
        n >>= 1
        if n:
            base = divmod_(mul(base, base, zero), m)[1]
    return result
