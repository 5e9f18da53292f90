"""Power series in several variables, reduced to the univariate criterion.

A :class:`MultiSeries` is a lazy sparse map from exponent vectors to field
elements.  Two reductions tie it to :mod:`algseries.algebraicity`:

* ``slice(s, m)`` is the coefficient of x_n^m, a series in the first n-1
  variables;
* ``fiber_series(s, l, I)`` is the univariate series along axis l through
  the multi-index I.

If a series is algebraic, so is every fiber.  ``check_multivar`` therefore
certifies non-algebraicity from one bad fiber, and certifies algebraicity by
running the coefficient-field criterion on the whole series and verifying an
annihilator on truncations.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

from .algebraicity import (
    AlgebraicCertified,
    Inconclusive,
    NotAlgebraicCertified,
    _stable,
    apply_map,
    check_full,
    conjugation_maps,
)
from .errors import ConjugatesUnavailable, InfiniteTruncation
from .fields.subfield import compositum_twist, prefix_or_generated
from .fields.tower import FieldElement, Tower
from .series import (
    FiniteRule,
    IndexedRule,
    MapRule,
    PuiseuxSeries,
    _combine_profiles,
    _join,
)


# -- multi-indices ----------------------------------------------------------------

def indices_upto(n: int, D: int):
    """All exponent vectors in n variables with total degree at most D."""
    for total in range(D + 1):
        yield from _compositions(n, total)


def _compositions(n, total):
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest


def _add(I, J):
    return tuple(a + b for a, b in zip(I, J))


def _int_exponent(e) -> int:
    if e.denominator != 1 or e < 0:
        raise ValueError(f"multivariate series need natural exponents, got {e}")
    return int(e)


def _scan(s: PuiseuxSeries, bound: int):
    """Nonzero terms of a univariate series with exponent at most ``bound``."""
    out = []
    i = 0
    while True:
        t = s.candidate(i)
        if t is None or t[0] > bound:
            return out
        if t[1]:
            out.append((_int_exponent(t[0]), t[1]))
        i += 1
        if i > PuiseuxSeries.SCAN_LIMIT * 50:
            raise InfiniteTruncation("scan limit exceeded below the degree bound")


def _series_sum(tower: Tower, parts: list) -> PuiseuxSeries:
    parts = [p for p in parts if not (isinstance(p.rule, FiniteRule) and not p.rule.terms)]
    if not parts:
        return PuiseuxSeries.zero(tower)
    return functools.reduce(lambda a, b: a + b, parts)


def fmt_multi(terms: dict, names) -> str:
    if not terms:
        return "0"
    parts = []
    for I in sorted(terms, key=lambda I: (sum(I), tuple(-a for a in I))):
        c = terms[I]
        mon = "*".join(
            (v if a == 1 else f"{v}^{a}") for v, a in zip(names, I) if a
        )
        cs = c.fmt()
        if not mon:
            parts.append(cs)
        elif cs == "1":
            parts.append(mon)
        elif cs == "-1":
            parts.append("-" + mon)
        else:
            if " " in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*{mon}")
    return " + ".join(parts).replace("+ -", "- ")


# -- rules ------------------------------------------------------------------------

class MultiRule:
    """Source of coefficients; ``terms(D)`` returns the nonzero ones of degree <= D."""

    profile = ("unknown",)

    def __init__(self, n: int, tower: Tower):
        if n < 1:
            raise ValueError("a multivariate series needs at least one variable")
        self.n = n
        self._tower = tower

    @property
    def tower(self) -> Tower:
        return self._tower

    def terms(self, D: int) -> dict:
        raise NotImplementedError

    def fiber(self, l: int, I: tuple) -> PuiseuxSeries:
        raise NotImplementedError

    def poly_degree(self):
        """A bound on the total degree when the series is a polynomial, else None."""
        return None


class ExplicitMulti(MultiRule):
    def __init__(self, n, tower, terms: dict):
        super().__init__(n, tower)
        self.coeffs = {}
        for I, c in terms.items():
            I = tuple(int(a) for a in I)
            if len(I) != n or min(I) < 0:
                raise ValueError(f"bad exponent vector {I} for {n} variables")
            c = tower.coerce(c)
            if c:
                self.coeffs[I] = self.coeffs[I] + c if I in self.coeffs else c
        self.coeffs = {I: c for I, c in self.coeffs.items() if c}
        self.profile = ("finite",)

    def poly_degree(self):
        return max((sum(I) for I in self.coeffs), default=0)

    def terms(self, D):
        return {I: c for I, c in self.coeffs.items() if sum(I) <= D}

    def fiber(self, l, I):
        ts = [(J[l], c) for J, c in self.coeffs.items()
              if all(J[k] == I[k] for k in range(self.n) if k != l)]
        return PuiseuxSeries.finite(self.tower, ts)


class UnivariateInVar(MultiRule):
    """A univariate series s read in the variable x_var."""

    def __init__(self, n, s: PuiseuxSeries, var: int):
        super().__init__(n, s.tower)
        if not 0 <= var < n:
            raise ValueError("variable index out of range")
        self.s, self.var = s, var
        self.profile = s.rule.profile or ("unknown",)

    @property
    def tower(self):
        return self.s.tower

    def terms(self, D):
        out = {}
        for e, c in _scan(self.s, D):
            I = [0] * self.n
            I[self.var] = e
            out[tuple(I)] = c
        return out

    def fiber(self, l, I):
        others = [I[k] for k in range(self.n) if k != l]
        if l == self.var:
            return self.s if not any(others) else PuiseuxSeries.zero(self.tower)
        if any(I[k] for k in range(self.n) if k not in (l, self.var)):
            return PuiseuxSeries.zero(self.tower)
        c = self.s.coefficient(I[self.var])
        return PuiseuxSeries.finite(c.tower, [(0, c)])


class MonomialSubst(MultiRule):
    """s(X^v) for a univariate series s and a nonzero exponent vector v."""

    def __init__(self, n, s: PuiseuxSeries, v):
        super().__init__(n, s.tower)
        v = tuple(int(a) for a in v)
        if len(v) != n or min(v) < 0 or not any(v):
            raise ValueError("monomial substitution needs a nonzero natural vector")
        self.s, self.v = s, v
        self.profile = s.rule.profile or ("unknown",)

    @property
    def tower(self):
        return self.s.tower

    def terms(self, D):
        w = sum(self.v)
        return {tuple(e * a for a in self.v): c for e, c in _scan(self.s, D // w)}

    def fiber(self, l, I):
        v = self.v
        ks = [k for k in range(self.n) if k != l and v[k]]
        if any(I[k] for k in range(self.n) if k != l and not v[k]):
            return PuiseuxSeries.zero(self.tower)
        if not ks:
            return self.s.substitute_power(v[l])
        es = {I[k] // v[k] for k in ks if I[k] % v[k] == 0}
        if len(es) != 1 or any(I[k] % v[k] for k in ks):
            return PuiseuxSeries.zero(self.tower)
        e = es.pop()
        if any(I[k] != e * v[k] for k in ks):
            return PuiseuxSeries.zero(self.tower)
        c = self.s.coefficient(e)
        return PuiseuxSeries.finite(c.tower, [(e * v[l], c)])


class SumMulti(MultiRule):
    def __init__(self, a: "MultiSeries", b: "MultiSeries"):
        if a.n != b.n:
            raise ValueError("variable counts differ")
        super().__init__(a.n, _join(a.tower, b.tower))
        self.a, self.b = a, b
        self.profile = _combine_profiles(a.rule.profile, b.rule.profile)

    @property
    def tower(self):
        return _join(self.a.tower, self.b.tower)

    def terms(self, D):
        out = dict(self.a.terms(D))
        for I, c in self.b.terms(D).items():
            out[I] = out[I] + c if I in out else c
        return {I: c for I, c in out.items() if c}

    def fiber(self, l, I):
        return self.a.rule.fiber(l, I) + self.b.rule.fiber(l, I)

    def poly_degree(self):
        da, db = self.a.rule.poly_degree(), self.b.rule.poly_degree()
        return None if da is None or db is None else max(da, db)


class ProductMulti(MultiRule):
    def __init__(self, a: "MultiSeries", b: "MultiSeries"):
        if a.n != b.n:
            raise ValueError("variable counts differ")
        super().__init__(a.n, _join(a.tower, b.tower))
        self.a, self.b = a, b
        self.profile = _combine_profiles(a.rule.profile, b.rule.profile)

    @property
    def tower(self):
        return _join(self.a.tower, self.b.tower)

    def terms(self, D):
        ta = self.a.terms(D)
        tb = self.b.terms(D)
        out: dict = {}
        for I, c in ta.items():
            rest = D - sum(I)
            for J, d in tb.items():
                if sum(J) <= rest:
                    K = _add(I, J)
                    out[K] = out[K] + c * d if K in out else c * d
        return {I: c for I, c in out.items() if c}

    def fiber(self, l, I):
        # split the off-axis part of I between the factors
        ranges = [range(I[k] + 1) if k != l else range(1) for k in range(self.n)]
        parts = []
        for A in itertools.product(*ranges):
            B = tuple(I[k] - A[k] if k != l else 0 for k in range(self.n))
            fa = self.a.rule.fiber(l, A)
            fb = self.b.rule.fiber(l, B)
            if _is_zero(fa) or _is_zero(fb):
                continue
            parts.append(fa * fb)
        return _series_sum(self.tower, parts)

    def poly_degree(self):
        da, db = self.a.rule.poly_degree(), self.b.rule.poly_degree()
        return None if da is None or db is None else da + db


def _is_zero(s: PuiseuxSeries) -> bool:
    return isinstance(s.rule, FiniteRule) and not s.rule.terms


class Binomial(MultiRule):
    """1 / (1 - c_1 x_1 - ... - c_n x_n), coefficients from the multinomial identity."""

    def __init__(self, n, tower, weights=None):
        super().__init__(n, tower)
        self.weights = [tower.coerce(w) for w in (weights or [1] * n)]
        if len(self.weights) != n:
            raise ValueError("one weight per variable")
        self.profile = ("finite",)

    def coefficient(self, I):
        total = sum(I)
        m = math.factorial(total)
        for a in I:
            m //= math.factorial(a)
        c = self.tower.coerce(m)
        for w, a in zip(self.weights, I):
            c = c * w**a
        return c

    def terms(self, D):
        out = {}
        for I in indices_upto(self.n, D):
            c = self.coefficient(I)
            if c:
                out[I] = c
        return out

    def fiber(self, l, I):
        def term(j):
            J = list(I)
            J[l] = j
            return j, self.coefficient(tuple(J))

        return PuiseuxSeries(IndexedRule(self.tower, term, low=0, denominator=1))


class MapMulti(MultiRule):
    """Coefficientwise map, optionally scaling every exponent by an integer."""

    def __init__(self, a: "MultiSeries", coeff=None, scale: int = 1, tower=None, profile=None):
        super().__init__(a.n, tower or a.tower)
        self.a, self.fn, self.scale, self.fixed_tower = a, coeff, scale, tower
        self.profile = profile if profile is not None else a.rule.profile

    @property
    def tower(self):
        return self.fixed_tower or self.a.tower

    def terms(self, D):
        out = {}
        for I, c in self.a.terms(D // self.scale).items():
            c = self.fn(c) if self.fn else c
            if c:
                out[tuple(self.scale * x for x in I)] = c
        return out

    def fiber(self, l, I):
        q = self.scale
        if any(I[k] % q for k in range(self.n) if k != l):
            return PuiseuxSeries.zero(self.tower)
        base = self.a.rule.fiber(l, tuple(x // q if k != l else 0 for k, x in enumerate(I)))
        return PuiseuxSeries(MapRule(base, scale=q, coeff=self.fn, tower=self.fixed_tower))

    def poly_degree(self):
        d = self.a.rule.poly_degree()
        return None if d is None else d * self.scale


class SliceRule(MultiRule):
    """The coefficient of x_n^m, a series in the remaining variables."""

    def __init__(self, a: "MultiSeries", m: int):
        if a.n < 2:
            raise ValueError("slicing needs at least two variables")
        super().__init__(a.n - 1, a.tower)
        self.a, self.m = a, m
        self.profile = a.rule.profile

    @property
    def tower(self):
        return self.a.tower

    def terms(self, D):
        return {I[:-1]: c for I, c in self.a.terms(D + self.m).items() if I[-1] == self.m}

    def fiber(self, l, I):
        return self.a.rule.fiber(l, tuple(I) + (self.m,))


# -- the series object -----------------------------------------------------------

class MultiSeries:
    """A power series in n variables over a field tower."""

    def __init__(self, rule: MultiRule, names=None):
        self.rule = rule
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(rule.n))
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return self.rule.n

    @property
    def tower(self) -> Tower:
        return self.rule.tower

    # constructors
    @classmethod
    def explicit(cls, n, tower, terms, names=None):
        return cls(ExplicitMulti(n, tower, terms), names)

    @classmethod
    def univariate(cls, n, s: PuiseuxSeries, var: int, names=None):
        """s in the variable x_(var+1)."""
        return cls(UnivariateInVar(n, s, var), names)

    @classmethod
    def monomial_subst(cls, s: PuiseuxSeries, v, names=None):
        return cls(MonomialSubst(len(v), s, v), names)

    @classmethod
    def binomial(cls, n, tower, weights=None, names=None):
        return cls(Binomial(n, tower, weights), names)

    # arithmetic
    def __add__(self, other):
        return MultiSeries(SumMulti(self, other), self.names)

    def __mul__(self, other):
        if isinstance(other, MultiSeries):
            return MultiSeries(ProductMulti(self, other), self.names)
        c = other if isinstance(other, FieldElement) else self.tower.coerce(other)
        return MultiSeries(MapMulti(self, coeff=lambda x: x * c), self.names)

    def __neg__(self):
        return MultiSeries(MapMulti(self, coeff=lambda c: -c), self.names)

    def __sub__(self, other):
        return self + (-other)

    def frobenius(self, r: int = 1) -> "MultiSeries":
        if r == 0:
            return self
        p = self.tower.char
        if not p:
            raise ValueError("termwise Frobenius needs positive characteristic")
        prof = self.rule.profile
        if prof and prof[0] == "twist-finite":
            prof = ("finite",) if prof[1] <= r else ("twist-finite", prof[1] - r)
        return MultiSeries(MapMulti(self, coeff=lambda c: c.frobenius(r), scale=p**r, profile=prof), self.names)

    def __pow__(self, k: int):
        if k == 0:
            return MultiSeries.explicit(self.n, self.tower, {(0,) * self.n: 1}, self.names)
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    # access
    def terms(self, D: int) -> dict:
        """Nonzero coefficients of total degree at most D."""
        if D not in self._cache:
            self._cache[D] = self.rule.terms(D)
        return self._cache[D]

    def coefficient(self, I) -> FieldElement:
        I = tuple(I)
        c = self.terms(sum(I)).get(I)
        return c if c is not None else self.tower.zero()

    def fmt(self, D: int = 6) -> str:
        return fmt_multi(self.terms(D), self.names) + " + ..."

    def __repr__(self):
        return f"MultiSeries({self.fmt(4)})"


def truncate_multi(s: MultiSeries, D: int, axis_bound: int | None = None) -> dict:
    """Terms of total degree at most D, optionally with x_n-degree at most axis_bound."""
    ts = s.terms(D)
    if axis_bound is None:
        return dict(ts)
    return {I: c for I, c in ts.items() if I[-1] <= axis_bound}


def slice_series(s: MultiSeries, m: int) -> MultiSeries:
    """The coefficient of x_n^m, as a series in the first n-1 variables."""
    return MultiSeries(SliceRule(s, m), s.names[:-1])


def fiber_series(s: MultiSeries, l: int, I) -> PuiseuxSeries:
    """The series along axis l (1-based) through the multi-index I.

    The l-th entry of I is ignored.
    """
    if not 1 <= l <= s.n:
        raise ValueError(f"axis {l} out of range for {s.n} variables")
    I = list(I)
    if len(I) != s.n:
        raise ValueError("multi-index length differs from the variable count")
    I[l - 1] = 0
    return s.rule.fiber(l - 1, tuple(I))


def reassemble(s: MultiSeries, M: int, D: int) -> dict:
    """sum over m <= M of slice(s, m) * x_n^m, to total degree D."""
    out = {}
    for m in range(M + 1):
        if m > D:
            break
        for I, c in slice_series(s, m).terms(D - m).items():
            out[I + (m,)] = c
    return out


# -- annihilators with multivariate coefficients --------------------------------------

class MultiPolynomial:
    """sum_j a_j(X) y^j with multivariate series coefficients."""

    def __init__(self, tower: Tower, coeffs: dict, names):
        self.tower = tower
        self.coeffs = coeffs
        self.names = tuple(names)

    @property
    def degree(self) -> int:
        return max(self.coeffs)

    def residue(self, s: MultiSeries, D: int) -> dict:
        """Nonzero terms of P(X, s) of total degree at most D."""
        sD = s.terms(D)
        acc: dict = {}
        power = {(0,) * s.n: self.tower.one()}
        for j in range(self.degree + 1):
            if j:
                power = _mul_trunc(power, sD, D)
            a = self.coeffs.get(j)
            if a is None:
                continue
            for I, c in _mul_trunc(a.terms(D), power, D).items():
                acc[I] = acc[I] + c if I in acc else c
        return {I: c for I, c in acc.items() if c}

    def fmt(self, D: int = 6) -> str:
        parts = []
        for j in sorted(self.coeffs, reverse=True):
            a = self.coeffs[j]
            bound = a.rule.poly_degree()
            if bound is None:
                d = D
                while len(a.terms(d)) < 4 and d < 8 * D:
                    d *= 2
                ts = a.terms(d)
            else:
                ts = a.terms(bound)
            if not ts and bound is not None:
                continue
            cs = fmt_multi(ts, self.names)
            if bound is None:
                cs += " + ..."
            ys = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
            if not ys:
                parts.append(cs)
            elif cs == "1":
                parts.append(ys)
            elif cs == "-1":
                parts.append("-" + ys)
            elif " " in cs.strip("-"):
                parts.append(f"({cs})*{ys}")
            else:
                parts.append(f"{cs}*{ys}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPolynomial({self.fmt(6)})"


def _mul_trunc(a: dict, b: dict, D: int) -> dict:
    out: dict = {}
    for I, c in a.items():
        rest = D - sum(I)
        if rest < 0:
            continue
        for J, d in b.items():
            if sum(J) <= rest:
                K = _add(I, J)
                out[K] = out[K] + c * d if K in out else c * d
    return {I: c for I, c in out.items() if c}


def _one(n, tower, names) -> MultiSeries:
    return MultiSeries.explicit(n, tower, {(0,) * n: 1}, names)


def frobenius_annihilator(s: MultiSeries, r: int, k_depth: int = 0) -> MultiPolynomial:
    """y^(p^r) - s^(p^r), with the right side read over k."""
    K = s.tower.prefix(k_depth)
    tau = s.frobenius(r)
    down = MultiSeries(MapMulti(tau, coeff=lambda c: c.restrict(k_depth), tower=K), s.names)
    q = s.tower.char**r if r else 1
    return MultiPolynomial(K, {q: _one(s.n, K, s.names), 0: -down}, s.names)


def galois_multi_annihilator(s: MultiSeries, r: int, M: Tower, k_depth: int = 0) -> MultiPolynomial:
    """prod over automorphisms of (y - conj(s^(p^r))), composed with y -> y^(p^r)."""
    maps = conjugation_maps(M, k_depth)
    K = M.prefix(k_depth)
    tau = s.frobenius(r) if r else s
    poly = [_one(s.n, M, s.names)]
    for images in maps:
        conj = MultiSeries(
            MapMulti(tau, coeff=lambda c, im=images: apply_map(M.coerce(c), im, M, k_depth), tower=M),
            s.names,
        )
        new = []
        for j in range(len(poly) + 1):
            hi = poly[j - 1] if j >= 1 else None
            lo = -(poly[j] * conj) if j < len(poly) else None
            new.append(lo if hi is None else hi if lo is None else hi + lo)
        poly = new

    def down(c):
        c = M.coerce(c)
        if not c.in_prefix(k_depth):
            raise ConjugatesUnavailable("a symmetric coefficient left the base field")
        return c.restrict(k_depth)

    q = s.tower.char**r if r else 1
    coeffs = {j * q: MultiSeries(MapMulti(a, coeff=down, tower=K), s.names) for j, a in enumerate(poly)}
    return MultiPolynomial(K, coeffs, s.names)


# -- the criterion --------------------------------------------------------------

@dataclass
class FiberProbe:
    axis: int  # 1-based
    index: tuple
    verdict: object

    def to_json(self) -> dict:
        return {"axis": self.axis, "index": list(self.index), "verdict": self.verdict.kind}


def probe_indices(n: int, probe_bound: int):
    """(axis, multi-index) pairs: all I with I_l = 0 and |I| <= probe_bound."""
    for l in range(1, n + 1):
        for I in indices_upto(n, probe_bound):
            if I[l - 1] == 0:
                yield l, I


def _coefficients_by_degree(s: MultiSeries, count: int, D_max: int = 64) -> list:
    """The first ``count`` nonzero coefficients in graded order."""
    D = 1
    while True:
        ts = s.terms(D)
        if len(ts) >= count or D >= D_max:
            keys = sorted(ts, key=lambda I: (sum(I), tuple(-a for a in I)))
            return [ts[I] for I in keys[:count]]
        D *= 2


def _twist_schedule(s: MultiSeries, coeffs: list, r: int, k_depth: int) -> list:
    T = s.tower
    q = T.char**r if T.char else 1
    out = []
    for i in range(1, len(coeffs) + 1):
        gens = [T.coerce(c) ** q for c in coeffs[:i]]
        out.append(prefix_or_generated(T, k_depth, gens).degree)
    return out


def check_multivar(s: MultiSeries, i_max: int = 6, r_max: int = 3, trunc: int = 40,
                   k_depth: int = 0, probe_bound: int = 2, verify_degree: int | None = None):
    """Decide algebraicity of a multivariate series over the field of fractions of k[[X]].

    Fibers along every axis through all multi-indices of total degree at
    most ``probe_bound`` are checked with the univariate criterion.  One
    non-algebraic fiber proves the series non-algebraic.  Algebraicity is
    certified from the coefficient field of the whole series and an
    annihilator whose substitution residue vanishes to total degree
    ``verify_degree``.
    """
    T = s.tower
    p = T.char
    diag: dict = {"probe_bound": probe_bound, "variables": s.n}
    if s.n == 1:
        return check_full(fiber_series(s, 1, (0,)), i_max, r_max, trunc, k_depth)

    probes = []
    fibers = []
    for l, I in probe_indices(s.n, probe_bound):
        f = fiber_series(s, l, I)
        fibers.append(f)
        probes.append(FiberProbe(l, I, check_full(f, i_max, r_max, trunc, k_depth)))
    diag["probes"] = [pr.to_json() for pr in probes]
    for pr in probes:
        if isinstance(pr.verdict, NotAlgebraicCertified):
            diag["fiber"] = {"axis": pr.axis, "index": list(pr.index)}
            just = f"fiber along x{pr.axis} at {list(pr.index)}: {pr.verdict.justification}"
            return NotAlgebraicCertified(pr.verdict.schedule, just, diag)

    try:
        coeffs = _coefficients_by_degree(s, i_max)
    except InfiniteTruncation as exc:
        diag["reason"] = str(exc)
        return Inconclusive(i_max, r_max, diag)
    T = s.tower
    profile = s.rule.profile or ("unknown",)
    diag["profile"] = list(profile)
    twists = range(r_max + 1) if p else [0]
    schedule = {r: _twist_schedule(s, coeffs, r, k_depth) for r in twists}
    diag["prefix_degrees"] = {str(r): d for r, d in schedule.items()}
    exhausted = isinstance(s.rule, ExplicitMulti)

    def finite_at(r):
        if profile[0] == "finite":
            return True
        if profile[0] == "twist-finite":
            return r >= profile[1]
        if profile[0] == "unbounded":
            return False
        return _stable(schedule[r], exhausted)

    r_star = next((r for r in twists if finite_at(r)), None)
    if r_star is None:
        diag["reason"] = "coefficient field not shown finite under any twist within the budget"
        return Inconclusive(i_max, r_max, diag)

    # the probed fibers' coefficient fields, twisted and joined
    try:
        joined = functools.reduce(_join, [f.tower for f in fibers], T)
        diag["fiber_compositum_degree"] = compositum_twist(joined.prefix(k_depth), joined, r_star).degree
    except ValueError:
        diag["fiber_compositum_degree"] = None

    degree = schedule[r_star][-1] if schedule[r_star] else 1
    D = verify_degree or max(2 * trunc // 5, 12)
    for poly in _multi_candidates(s, r_star, degree, schedule, k_depth, diag):
        try:
            ok = not poly.residue(s, D)
        except (ValueError, ConjugatesUnavailable) as exc:
            diag.setdefault("rejected", []).append(type(exc).__name__)
            continue
        if ok:
            diag["verified_degree"] = D
            return AlgebraicCertified(poly, r_star, degree, D, diag)
    diag.pop("method", None)
    diag["reason"] = "no annihilating polynomial certified within the bounds"
    return Inconclusive(i_max, r_max, diag)


def _multi_candidates(s, r, degree, schedule, k_depth, diag):
    p = s.tower.char
    if degree == 1:
        diag["method"] = "frobenius"
        yield frobenius_annihilator(s, r, k_depth)
        return
    if p:
        for r2 in sorted(schedule):
            d2 = schedule[r2]
            if r2 > r and d2 and d2[-1] == 1:
                diag["method"] = "frobenius"
                yield frobenius_annihilator(s, r2, k_depth)
                break
    try:
        coeffs = list(s.terms(8).values())
        M = prefix_or_generated(s.tower, k_depth, coeffs).tower
        diag["method"] = "galois"
        yield galois_multi_annihilator(s, r, M, k_depth)
    except ConjugatesUnavailable as exc:
        diag["galois"] = str(exc)
