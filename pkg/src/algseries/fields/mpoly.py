"""Sparse multivariate polynomials over a prime field.

A polynomial is a plain ``dict`` mapping monomials to nonzero coefficients.
A monomial is a tuple of ``(var, exponent)`` pairs sorted by ``var``; a
variable is a ``(name, index)`` pair (index 0 for standalone generators), so
family members ``t1, t2, ..., t10`` sort numerically.

GCDs are delegated to sympy, or to python-flint for one variable when it is
installed; everything else is done here.
"""
from __future__ import annotations

import sympy

try:
    import flint as _flint
except ImportError:  # optional accelerator
    _flint = None

ONE = ()


def var_str(v) -> str:
    name, idx = v
    return name if idx == 0 else f"{name}{idx}"


def mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        a, b = m1[i], m2[j]
        if a[0] == b[0]:
            out.append((a[0], a[1] + b[1]))
            i += 1
            j += 1
        elif a[0] < b[0]:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def mono_pow(m, n: int):
    return tuple((v, e * n) for v, e in m)


def mono_div(m1, m2):
    """m1 / m2 if it is a monomial, else None."""
    d = dict(m1)
    for v, e in m2:
        r = d.get(v, 0) - e
        if r < 0:
            return None
        if r:
            d[v] = r
        else:
            d.pop(v, None)
    return tuple(sorted(d.items()))


def mono_deg(m) -> int:
    return sum(e for _, e in m)


def variables(a) -> set:
    return {v for m in a for v, _ in m}


def const(F, c):
    c = F(c)
    return {ONE: c} if c else {}


def var(F, v):
    return {((v, 1),): F.one}


def is_const(a) -> bool:
    return not a or (len(a) == 1 and ONE in a)


def const_value(F, a):
    return a.get(ONE, F.zero)


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for m, c in b.items():
        s = F.add(out.get(m, F.zero), c)
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def neg(F, a):
    return {m: F.neg(c) for m, c in a.items()}


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, a, c):
    if not c:
        return {}
    if c == F.one:
        return a
    return {m: F.mul(x, c) for m, x in a.items()}


def mul(F, a, b):
    if not a or not b:
        return {}
    if len(a) == 1 and ONE in a:
        return scale(F, b, a[ONE])
    if len(b) == 1 and ONE in b:
        return scale(F, a, b[ONE])
    if _flint is not None and F.char and len(a) * len(b) > 16:
        vs = variables(a) | variables(b)
        if len(vs) == 1:
            (v,) = vs
            A = _flint.nmod_poly(_dense(a, v, F.char)[::-1], F.char)
            B = _flint.nmod_poly(_dense(b, v, F.char)[::-1], F.char)
            return _sparse([int(c) for c in reversed((A * B).coeffs())], v)
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = mono_mul(m1, m2)
            s = F.add(out.get(m, F.zero), F.mul(c1, c2))
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def power(F, a, n: int):
    result = const(F, 1)
    base = a
    while n:
        if n & 1:
            result = mul(F, result, base)
        n >>= 1
        if n:
            base = mul(F, base, base)
    return result


def lead(a):
    """Leading monomial in lexicographic order on sorted exponent vectors."""
    vs = sorted(variables(a))
    if len(vs) <= 1:
        return max(a, key=mono_deg)
    return max(a, key=lambda m: _expvec(m, vs))


def _expvec(m, vs):
    d = dict(m)
    return tuple(d.get(v, 0) for v in vs)


def total_degree(a) -> int:
    return max((mono_deg(m) for m in a), default=-1)


def min_degree(a) -> int:
    return min((mono_deg(m) for m in a), default=-1)


# -- sympy bridge -----------------------------------------------------------

def _to_sympy(F, polys):
    vs = sorted(set().union(*(variables(a) for a in polys)))
    gens = [sympy.Symbol(f"g{i}") for i in range(len(vs))] or [sympy.Symbol("g0")]
    idx = {v: i for i, v in enumerate(vs)}
    n = len(gens)
    opts = {"modulus": F.char} if F.char else {"domain": "QQ"}
    out = []
    for a in polys:
        d = {}
        for m, c in a.items():
            vec = [0] * n
            for v, e in m:
                vec[idx[v]] = e
            d[tuple(vec)] = c if F.char else sympy.Rational(c.numerator, c.denominator)
        out.append(sympy.Poly.from_dict(d, gens, **opts) if d else sympy.Poly(0, *gens, **opts))
    return vs, out


def _from_sympy(F, vs, P):
    out = {}
    for vec, c in P.terms():
        if F.char:
            c = int(c) % F.char
        else:
            c = F(sympy.Rational(c).p) / int(sympy.Rational(c).q)
        if c:
            out[tuple((vs[i], e) for i, e in enumerate(vec) if e)] = c
    return out


def _dense(a, v, p):
    """Coefficients of a univariate polynomial in v, highest degree first."""
    # monomials of a univariate polynomial are () or ((v, e),)
    items = [(m[0][1] if m else 0, c) for m, c in a.items()]
    deg = max((e for e, _ in items), default=0)
    out = [0] * (deg + 1)
    for e, c in items:
        out[deg - e] = int(c) % p
    return out


def _sparse(d, v):
    n = len(d) - 1
    return {(((v, n - i),) if n - i else ONE): c for i, c in enumerate(d) if c}


def cofactors(F, a, b):
    """(g, a/g, b/g) with g = gcd(a, b)."""
    vs = variables(a) | variables(b)
    if F.char and len(vs) == 1:
        # univariate over F_p: dense integer lists avoid the conversion cost
        (v,) = vs
        p = F.char
        A, B = _dense(a, v, p), _dense(b, v, p)
        if _flint is not None:
            A, B = _flint.nmod_poly(A[::-1], p), _flint.nmod_poly(B[::-1], p)
            G = A.gcd(B)
            return tuple(_sparse([int(c) for c in reversed(h.coeffs())], v) for h in (G, A // G, B // G))
        from sympy.polys.domains import ZZ
        from sympy.polys.galoistools import gf_gcd, gf_quo

        G = gf_gcd(A, B, p, ZZ)
        return _sparse(G, v), _sparse(gf_quo(A, G, p, ZZ), v), _sparse(gf_quo(B, G, p, ZZ), v)
    vs, (A, B) = _to_sympy(F, [a, b])
    G, Ca, Cb = A.cofactors(B)
    return _from_sympy(F, vs, G), _from_sympy(F, vs, Ca), _from_sympy(F, vs, Cb)


# -- roots and p-bases ------------------------------------------------------

def pbasis_split(F, a):
    """Split a polynomial over F_p as sum_e t^e * Q_e^p with exponents e in [0, p).

    Returns ``{e_mono: Q_e}``; the p-th root of an F_p coefficient is itself.
    """
    p = F.char
    parts: dict = {}
    for m, c in a.items():
        rem = tuple((v, e % p) for v, e in m if e % p)
        quo = tuple((v, e // p) for v, e in m if e // p)
        parts.setdefault(rem, {})[quo] = c
    return parts


def qth_root(F, a, q: int):
    """Exact q-th root of a polynomial (char does not divide q), or None."""
    if not a:
        return {}
    if q == 1:
        return dict(a)
    if F.char and q % F.char == 0:
        raise ValueError("use pbasis_split for p-th roots")
    vs = sorted(variables(a))
    key = lambda m: _expvec(m, vs)
    lm = max(a, key=key)
    if any(e % q for _, e in lm):
        return None
    c = F.root(a[lm], q)
    if c is None:
        return None
    lo = min_degree(a)
    if lo % q:
        return None
    lo //= q
    g = {tuple((v, e // q) for v, e in lm): c}
    g_lm = next(iter(g))
    denom = F.mul(F(q), F.pow(c, q - 1))
    lead_pow = mono_pow(g_lm, q - 1)
    for _ in range(len(a) * (total_degree(a) + 2) + 10):
        r = sub(F, a, power(F, g, q))
        if not r:
            return g
        rm = max(r, key=key)
        t = mono_div(rm, lead_pow)
        if t is None or mono_deg(t) < lo or key(t) >= key(g_lm):
            return None
        g = add(F, g, {t: F.mul(r[rm], F.inv(denom))})
    return None


def fmt(F, a) -> str:
    if not a:
        return "0"
    parts = []
    for m in sorted(a, key=lambda m: (mono_deg(m), m)):
        c = a[m]
        mon = "*".join(var_str(v) if e == 1 else f"{var_str(v)}^{e}" for v, e in m)
        cs = F.fmt(c)
        if not mon:
            parts.append(cs)
        elif cs == "1":
            parts.append(mon)
        elif not F.char and c == -1:
            parts.append("-" + mon)
        else:
            parts.append(f"{cs}*{mon}")
    s = " + ".join(parts)
    return s.replace("+ -", "- ")
