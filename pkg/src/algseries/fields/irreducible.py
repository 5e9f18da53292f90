"""Root extraction and irreducibility certificates for tower extensions.

Certificates are ``"proved"`` (an exact test succeeded), ``"searched"``
(a bounded search found no factor) or ``"declared"`` (the caller vouches).
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import sympy

from ..errors import IrreducibilityUnverified, ReducibleWitness
from . import linalg
from . import mpoly as mp
from . import upoly
from .base import RatFunc

PRIMITIVE_ELEMENT_LIMIT = 32


# -- p-th roots ---------------------------------------------------------------

def pth_root(e):
    """The unique z in the tower with z^p = e, or None."""
    T = e.tower
    p = T.char
    if p == 0 or not e:
        return e
    if T.depth == 0:
        r = e.raw.pth_root()
        return None if r is None else T.element(r)
    decided = _monomial_lattice_test(e)
    if decided is False:
        return None
    b = e.base_value()
    if b is not None:
        r = b.pth_root()
        if r is not None:
            return T.from_base(r)
    # the element may already live low in the tower
    lvl = e.level()
    if lvl < T.depth:
        sub = pth_root(e.restrict(lvl))
        if sub is not None:
            return T.coerce(sub)
    return _pth_root_linear(e)


def _pbasis_vector(T, e, tag=()):
    out = {}
    for C, c in T.coords(e).items():
        for mu, Q in c.raw.pbasis().items():
            out[(C, mu)] = Q
    return out


def _pth_root_linear(e):
    T = e.tower
    p = T.char
    cols = {B: _pbasis_vector(T, T.monomial(B) ** p) for B in T.monomials()}
    z = linalg.solve(cols, _pbasis_vector(T, e), T.base.one())
    if z is None:
        return None
    root = T.from_coords(z)
    return root if root**p == e else None


def is_pth_power(e) -> bool:
    decided = _monomial_lattice_test(e)
    if decided is not None:
        return decided
    return pth_root(e) is not None


def _monomial_exponents(rf: RatFunc):
    """Exponent vector of a constant multiple of a Laurent monomial, or None."""
    if len(rf.num) != 1 or len(rf.den) != 1:
        return None
    (mn,) = rf.num
    (md,) = rf.den
    out = dict(mn)
    for v, e in md:
        out[v] = out.get(v, 0) - e
    return {v: e for v, e in out.items() if e}


def _monomial_lattice_test(e):
    """Decide p-th powers in towers of monomial radicals, or return None.

    When every step is Y^(p^a) - c with c a monomial, the tower is the field
    of fractions of a group ring on the monomials, so t^w is a p-th power
    exactly when w/p lies in the exponent group.
    """
    T = e.tower
    p = T.char
    b = e.base_value()
    if b is None or not b:
        return None
    w = _monomial_exponents(b)
    if w is None:
        return None
    gens = []
    for i, s in enumerate(T.steps):
        if s.kind != "purely-inseparable":
            return None
        c = s.minpoly[0]
        for _ in range(i):
            if len(c) != 1:
                return None
            c = c[0]
        v = _monomial_exponents(c)
        if v is None:
            return None
        gens.append((v, s.degree))
    names = sorted(set(w).union(*[set(v) for v, _ in gens]))
    Q = p * math.lcm(*[q for _, q in gens]) if gens else p
    lattice = [[Q if j == i else 0 for j in range(len(names))] for i in range(len(names))]
    for v, q in gens:
        lattice.append([(Q // q) * v.get(n, 0) for n in names])
    target = [(Q // p) * w.get(n, 0) for n in names]
    return _lattice_contains(lattice, target)


def _lattice_contains(rows, target) -> bool:
    """Integer membership of target in the Z-span of rows."""
    rows = [list(r) for r in rows if any(r)]
    target = list(target)
    n = len(target)
    col = 0
    basis = []
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                (new if r2[col] else rest).append(r2)
            nz = new
        piv = nz[0]
        basis.append((col, piv))
        rows = [r for r in rest if any(r)]
        col += 1
    for c, piv in basis:
        if target[c] % piv[c]:
            return False
        q = target[c] // piv[c]
        target = [a - q * b for a, b in zip(target, piv)]
    return not any(target)


# -- k-th powers -------------------------------------------------------------------

def _is_finite(T, extra=()):
    if T.char == 0:
        return False
    for i, s in enumerate(T.steps):
        from .tower import FieldElement

        for c in s.minpoly:
            if c and FieldElement(T.prefix(i), c).variables():
                return False
    return all(not x.variables() for x in extra)


def _rf_root(rf: RatFunc, q: int):
    F = rf.F
    n = mp.qth_root(F, rf.num, q)
    if n is None:
        return None
    d = mp.qth_root(F, rf.den, q)
    if d is None:
        return None
    return RatFunc(F, n, d)


def sqrt_in_tower(e):
    """Square root in a tower of quadratic radicals (char != 2); exact."""
    T = e.tower
    if not e:
        return e
    if T.depth == 0:
        r = _rf_root(e.raw, 2)
        return None if r is None else T.element(r)
    sub = T.prefix(T.depth - 1)
    g = T.gen(T.steps[-1].gen)
    d = g * g
    cs = T.coords(e, T.depth - 1)
    a = cs.get((0,), sub.zero())
    b = cs.get((1,), sub.zero())
    if not b:
        s = sqrt_in_tower(a)
        if s is not None:
            return T.coerce(s)
        w = sqrt_in_tower(a / d.restrict(T.depth - 1))
        if w is not None:
            return T.coerce(w) * g
        return None
    dd = d.restrict(T.depth - 1)
    n = sqrt_in_tower(a * a - dd * b * b)
    if n is None:
        return None
    half = sub.const(Fraction(1, 2))
    for sign in (1, -1):
        xs = sqrt_in_tower((a + n * sign) * half)
        if xs:
            y = b / (xs * 2)
            root = T.coerce(xs) + T.coerce(y) * g
            if root * root == e:
                return root
    return None


def is_kth_power(e, k: int):
    """True/False when decidable with the built-in methods, else None."""
    T = e.tower
    p = T.char
    if not e or k == 1:
        return True
    if p and k % p == 0:
        r = pth_root(e)
        if r is None:
            return False
        return is_kth_power(r, k // p)
    if T.depth == 0:
        return _rf_root(e.raw, k) is not None
    if _is_finite(T, [e]):
        Q = p ** T.degree
        return e ** ((Q - 1) // math.gcd(k, Q - 1)) == T.one()
    if k == 2 and p != 2 and _all_quadratic_radicals(T):
        kummer = _kummer_square_test(e)
        if kummer is not None:
            return kummer
        return sqrt_in_tower(e) is not None
    if k == 4 and p != 2 and _all_quadratic_radicals(T):
        s = sqrt_in_tower(e)
        return s is not None and any(sqrt_in_tower(x) is not None for x in (s, -s))
    return None


def _all_quadratic_radicals(T) -> bool:
    return all(len(s.minpoly) == 3 and not s.minpoly[1] for s in T.steps)


def _kummer_square_test(e):
    """Multiquadratic towers over the base: squares of base elements."""
    T = e.tower
    b = e.base_value()
    if b is None:
        return None
    rads = []
    for i, s in enumerate(T.steps):
        c = s.minpoly[0]
        for _ in range(i):
            if len(c) != 1:
                return None
            c = c[0]
        rads.append(-c)
    if len(rads) > 12:
        return None
    for mask in itertools.product((0, 1), repeat=len(rads)):
        acc = b
        for m, r in zip(mask, rads):
            if m:
                acc = acc * r
        if _rf_root(acc, 2) is not None:
            return True
    return False


def exact_root(T, c, q: int):
    """A q-th root of c already in T when one can be found exactly, else None."""
    c = T.coerce(c)
    p = T.char
    if not c:
        return c
    if p:
        while q % p == 0:
            c = pth_root(c)
            if c is None:
                return None
            q //= p
    if q == 1:
        return c
    if T.depth == 0:
        r = _rf_root(c.raw, q)
        return None if r is None else T.element(r)
    b = c.base_value()
    if b is not None:
        r = _rf_root(b, q)
        if r is not None:
            return T.from_base(r)
    if q == 2 and p != 2 and _all_quadratic_radicals(T):
        return sqrt_in_tower(c)
    return None


# -- irreducibility ---------------------------------------------------------------

def certify(T, coeffs, kind, declared=False) -> str:
    d = len(coeffs) - 1
    if d == 1:
        return "proved"
    radical = not any(coeffs[1:-1])
    if kind == "purely-inseparable":
        c = -coeffs[0]
        if is_pth_power(c):
            raise ReducibleWitness("radicand is a p-th power", witness=pth_root(c))
        return "proved"
    if _is_finite(T, coeffs):
        _ben_or(T, coeffs)
        return "proved"
    if radical:
        verdict = _capelli(T, -coeffs[0], d)
        if verdict is not None:
            return "proved"
    if T.char == 0 and T.degree * d <= PRIMITIVE_ELEMENT_LIMIT:
        if _primitive_element(T, coeffs):
            return "proved"
    if d == 2 and T.char != 2:
        disc = coeffs[1] * coeffs[1] - coeffs[0] * 4
        sq = is_kth_power(disc, 2)
        if sq is True:
            raise ReducibleWitness("discriminant is a square", witness=disc)
        if sq is False:
            return "proved"
    root = _root_search(T, coeffs)
    if root is not None:
        raise ReducibleWitness("minimal polynomial has a root", witness=root)
    if d <= 4:
        return "searched"
    if declared:
        return "declared"
    raise IrreducibilityUnverified(
        f"no exact irreducibility test for degree {d} here; pass declared=True"
    )


def _capelli(T, c, m):
    """Y^m - c irreducible iff c is not an l-th power (l | m prime) nor in -4K^4."""
    for l in sympy.primefactors(m):
        r = is_kth_power(c, l)
        if r is True:
            raise ReducibleWitness(f"radicand is a {l}-th power", witness=c)
        if r is None:
            return None
    if m % 4 == 0:
        r = is_kth_power(-c / 4, 4)
        if r is True:
            raise ReducibleWitness("radicand lies in -4K^4", witness=c)
        if r is None:
            return None
    return True


def _ben_or(T, coeffs):
    zero, one = T.zero(), T.one()
    f = list(coeffs)
    Y = [zero, one]
    h = Y
    for _ in range(1, (len(f) - 1) // 2 + 1):
        for _ in range(T.degree):
            h = upoly.powmod(h, T.char, f, zero, one)
        g = upoly.gcd(upoly.sub(h, Y), f)
        if len(g) > 1:
            raise ReducibleWitness("nontrivial factor over the finite field", witness=g)


def _rf_sympy(rf: RatFunc, symbols: dict):
    def conv(a):
        expr = sympy.Integer(0)
        for m, c in a.items():
            term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
            for v, e in m:
                if v not in symbols:
                    symbols[v] = sympy.Symbol(mp.var_str(v))
                term *= symbols[v] ** e
            expr += term
        return expr

    return conv(rf.num) / conv(rf.den)


def _primitive_element(T, coeffs) -> bool:
    """Char 0: exhibit an element of T[Y]/f with irreducible full-degree minpoly."""
    from .tower import ExtensionStep, Tower

    d = len(coeffs) - 1
    step = ExtensionStep("_Y", [c.raw for c in coeffs], "separable", "unchecked", T.F)
    A = Tower(T.base, T.steps + (step,))
    Y = A.gen("_Y")
    gens = [A.gen(s.gen) for s in T.steps]
    N = T.degree * d
    patterns = [[0] * len(gens)]
    if gens:
        patterns = [[1] * len(gens), list(range(1, len(gens) + 1)), list(sympy.primerange(2, 60))[: len(gens)]]
    one = T.base.one()
    for pat in patterns:
        theta = Y
        for c, g in zip(pat, gens):
            theta = theta + g * c
        vecs = []
        pw = A.one()
        for _ in range(N + 1):
            vecs.append({k: v.raw for k, v in A.coords(pw).items()})
            pw = pw * theta
        rel = linalg.first_relation(vecs, one)
        if rel is None or rel[0] != N:
            continue
        _, combo = rel
        symbols: dict = {}
        Ys = sympy.Symbol("_Y")
        expr = Ys**N - sum(_rf_sympy(c, symbols) * Ys**i for i, c in combo.items())
        num, _ = sympy.fraction(sympy.together(expr))
        gens_s = [Ys] + list(symbols.values())
        factors = sympy.factor_list(sympy.Poly(num, *gens_s))[1]
        ydeg = [(f.degree(Ys), k) for f, k in factors if f.degree(Ys) > 0]
        if ydeg == [(N, 1)]:
            return True
    return False


def _root_search(T, coeffs):
    cands = []
    F = T.F
    if T.char:
        cands += [T.const(i) for i in range(T.char)]
    else:
        for a in range(0, 4):
            for b in range(1, 4):
                cands += [T.const(Fraction(a, b)), T.const(Fraction(-a, b))]
    names = set()
    for c in coeffs:
        names |= c.variables()
    atoms = [T.from_base(RatFunc(F, mp.var(F, v))) for v in sorted(names)]
    atoms += T.gens()
    for a in atoms:
        cands += [a, -a, a + 1, a - 1]
    zero = T.zero()
    seen = set()
    for x in cands:
        if x in seen:
            continue
        seen.add(x)
        if not upoly.evaluate(coeffs, x, zero):
            return x
    return None
