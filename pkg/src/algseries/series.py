"""Lazily evaluated series with exact rational exponents.

A :class:`PuiseuxSeries` wraps a rule that yields *candidate* terms
``(exponent, coefficient)`` in strictly increasing exponent order.  A
candidate coefficient may be zero (a product whose contributions cancel,
say); truncations drop zeros, while ``head`` exposes the raw candidates.
Produced candidates are memoized, so re-reading a prefix is free.

Supports may accumulate (the exponents ``1 - p^-i`` crowd below 1); only the
part below the first accumulation point can be produced.
"""
from __future__ import annotations

import heapq
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import InfiniteTruncation, RamifiedRoot
from .fields.tower import FieldElement, Tower

INF = math.inf


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def fmt_exponent(e: Fraction) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "x"
    if e.denominator == 1:
        return f"x^{e.numerator}"
    return f"x^({e.numerator}/{e.denominator})"


def fmt_terms(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in terms:
        mon = fmt_exponent(e)
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


# -- truncation bounds --------------------------------------------------------

@dataclass(frozen=True)
class TermCount:
    m: int


@dataclass(frozen=True)
class ExponentBound:
    """Keep exponents strictly below ``b``."""

    b: Fraction


class ExplicitFinite:
    """A finite list of nonzero terms, sorted by exponent.

    ``complete`` is False when a term-count truncation hit its scan limit
    before finding the requested number of nonzero terms.
    """

    def __init__(self, terms, complete: bool = True):
        merged: dict = {}
        for e, c in terms:
            e = _frac(e)
            merged[e] = merged[e] + c if e in merged else c
        self.terms = [(e, merged[e]) for e in sorted(merged) if merged[e]]
        self.complete = complete

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other):
        if isinstance(other, ExplicitFinite):
            return self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        return f"ExplicitFinite({fmt_terms(self.terms)})"

    def exponents(self):
        return [e for e, _ in self.terms]

    def coefficients(self):
        return [c for _, c in self.terms]

    def is_zero(self) -> bool:
        return not self.terms


# -- rules ----------------------------------------------------------------

class Rule:
    """Base class: a source of candidate terms plus support metadata.

    ``low`` bounds the exponents from below, ``sup`` strictly from above,
    ``accumulation`` is the first accumulation point of the support and
    ``denominator`` is a common denominator of all exponents (None if the
    denominators are unbounded).  ``profile`` describes the coefficient field
    for the algebraicity pipeline (see :mod:`algseries.algebraicity`).
    """

    low: Fraction = Fraction(0)
    sup = INF
    accumulation = INF
    denominator = 1
    profile = None

    def __init__(self, tower: Tower):
        self._tower = tower

    @property
    def tower(self) -> Tower:
        return self._tower

    def candidates(self):
        raise NotImplementedError


class FiniteRule(Rule):
    def __init__(self, tower, terms):
        super().__init__(tower)
        self.terms = ExplicitFinite([(e, tower.coerce(c)) for e, c in terms]).terms
        self.low = self.terms[0][0] if self.terms else Fraction(0)
        self.sup = INF
        dens = [e.denominator for e, _ in self.terms]
        self.denominator = math.lcm(*dens) if dens else 1
        self.profile = ("finite",)

    def candidates(self):
        yield from self.terms


class CoefficientForm:
    """Coefficient of the i-th term of a template family."""

    def value(self, tower, i):
        raise NotImplementedError

    profile = ("unknown",)


class Const(CoefficientForm):
    def __init__(self, c):
        self.c = c
        self.profile = ("finite",)

    def value(self, tower, i):
        return tower, tower.coerce(self.c)


class IndexedRoot(CoefficientForm):
    """A fresh purely inseparable root t_n^(1/p^e) for each index n."""

    def __init__(self, family: str, root_e: int = 0):
        self.family = family
        self.root_e = root_e
        self.profile = ("twist-finite", root_e) if root_e else ("finite",)

    def value(self, tower, i):
        t = tower.gen(f"{self.family}{i}")
        if self.root_e == 0:
            return tower, t
        if not tower.char:
            raise ValueError("p-th roots of a family need positive characteristic")
        return tower.radical(t, tower.char**self.root_e)


class FrobeniusFamily(CoefficientForm):
    """kappa^(p^(e*i)); negative e takes iterated p-th roots."""

    def __init__(self, base, e: int = 1):
        self.base = base
        self.e = e
        if e >= 0:
            self.profile = ("finite",)
        else:
            self.profile = ("unbounded", "iterated inseparable roots")

    def value(self, tower, i):
        p = tower.char
        kappa = tower.coerce(self.base) if not isinstance(self.base, str) else tower.parse(self.base)
        tower = kappa.tower if kappa.tower.depth > tower.depth else tower
        if not p:
            return tower, kappa
        k = self.e * i
        if k >= 0:
            return tower, kappa.frobenius(k)
        return tower.radical(kappa, p ** (-k))


class PrimeRadical(CoefficientForm):
    """The m-th root of the i-th prime: independent radicals for every i."""

    def __init__(self, m: int = 2):
        self.m = m
        self.profile = ("unbounded", "independent radicals")

    def value(self, tower, i):
        import sympy

        return tower.radical(tower.const(sympy.prime(i)), self.m)


class TemplateFamily(Rule):
    """sum over i >= start of coefficient(i) * x^exponent(i).

    Exponent shapes: ``("affine", a, b)`` for a + b*i with b > 0, and
    ``("one-minus-p-pow",)`` for 1 - p^(-i), which accumulates at 1.
    """

    def __init__(self, tower: Tower, exponent, coefficient: CoefficientForm, start: int = 1, stop=None):
        super().__init__(tower)
        self.exponent = exponent
        self.coefficient = coefficient
        self.start = start
        self.stop = stop
        self._lock = threading.Lock()
        if exponent[0] == "affine":
            a, b = _frac(exponent[1]), _frac(exponent[2])
            if b <= 0:
                raise ValueError("affine exponent templates need b > 0")
            self.a, self.b = a, b
            self.denominator = math.lcm(a.denominator, b.denominator)
            self.sup = INF if stop is None else self.exp(stop) + 1
        elif exponent[0] == "one-minus-p-pow":
            if not tower.char:
                raise ValueError("exponents 1 - p^-i need positive characteristic")
            self.denominator = None if stop is None else tower.char**stop
            self.accumulation = Fraction(1) if stop is None else INF
            self.sup = Fraction(1)
        else:
            raise ValueError(f"unknown exponent template {exponent!r}")
        self.low = self.exp(start)
        self.profile = coefficient.profile if stop is None else ("finite",)

    def exp(self, i) -> Fraction:
        if self.exponent[0] == "affine":
            return self.a + self.b * i
        return 1 - Fraction(1, self.tower.char**i)

    def coeff(self, i):
        with self._lock:
            t, c = self.coefficient.value(self._tower, i)
            if t.depth > self._tower.depth:
                self._tower = t
        return c

    def candidates(self):
        i = self.start
        while self.stop is None or i <= self.stop:
            yield self.exp(i), self.coeff(i)
            i += 1


class IndexedRule(Rule):
    """Candidates from a function of the index: i -> (exponent, coefficient)."""

    def __init__(self, tower, fn, low=Fraction(0), denominator=1, sup=INF, stop=None):
        super().__init__(tower)
        self.fn = fn
        self.low = _frac(low)
        self.denominator = denominator
        self.sup = sup
        self.stop = stop

    def candidates(self):
        i = 0
        while self.stop is None or i < self.stop:
            yield self.fn(i)
            i += 1


class SumRule(Rule):
    def __init__(self, a: "PuiseuxSeries", b: "PuiseuxSeries"):
        super().__init__(_join(a.tower, b.tower))
        self.a, self.b = a, b
        self.low = min(a.rule.low, b.rule.low)
        self.sup = max(a.rule.sup, b.rule.sup)
        self.accumulation = min(a.rule.accumulation, b.rule.accumulation)
        self.denominator = _lcm(a.rule.denominator, b.rule.denominator)
        self.profile = _combine_profiles(a.rule.profile, b.rule.profile)

    @property
    def tower(self):
        return _join(self.a.tower, self.b.tower)

    def candidates(self):
        i = j = 0
        while True:
            ta, tb = self.a.candidate(i), self.b.candidate(j)
            if ta is None and tb is None:
                return
            if tb is None or (ta is not None and ta[0] < tb[0]):
                yield ta
                i += 1
            elif ta is None or tb[0] < ta[0]:
                yield tb
                j += 1
            else:
                yield ta[0], ta[1] + tb[1]
                i += 1
                j += 1


class ProductRule(Rule):
    """Cauchy product, enumerating exponent sums with a heap."""

    def __init__(self, a: "PuiseuxSeries", b: "PuiseuxSeries"):
        super().__init__(_join(a.tower, b.tower))
        self.a, self.b = a, b
        ra, rb = a.rule, b.rule
        self.low = ra.low + rb.low
        self.sup = ra.sup + rb.sup
        self.accumulation = min(ra.accumulation + rb.low, rb.accumulation + ra.low)
        self.denominator = _lcm(ra.denominator, rb.denominator)
        self.profile = _combine_profiles(ra.profile, rb.profile)

    @property
    def tower(self):
        return _join(self.a.tower, self.b.tower)

    def candidates(self):
        a, b = self.a, self.b
        if a.candidate(0) is None or b.candidate(0) is None:
            return
        heap = [(a.candidate(0)[0] + b.candidate(0)[0], 0, 0)]
        while heap:
            e = heap[0][0]
            acc = None
            while heap and heap[0][0] == e:
                _, i, j = heapq.heappop(heap)
                ta, tb = a.candidate(i), b.candidate(j)
                term = ta[1] * tb[1]
                acc = term if acc is None else acc + term
                nb = b.candidate(j + 1)
                if nb is not None:
                    heapq.heappush(heap, (ta[0] + nb[0], i, j + 1))
                if j == 0:
                    na = a.candidate(i + 1)
                    if na is not None:
                        heapq.heappush(heap, (na[0] + tb[0], i + 1, 0))
            yield e, acc


class MapRule(Rule):
    """Termwise transform: exponent affine map and coefficient map."""

    def __init__(self, a: "PuiseuxSeries", scale=1, shift=0, coeff=None, profile=None, tower=None):
        super().__init__(a.tower)
        self.a = a
        self.fixed_tower = tower
        self.scale = _frac(scale)
        self.shift = _frac(shift)
        self.fn = coeff
        ra = a.rule
        self.low = ra.low * self.scale + self.shift
        self.sup = ra.sup * self.scale + self.shift if ra.sup != INF else INF
        self.accumulation = ra.accumulation * self.scale + self.shift if ra.accumulation != INF else INF
        d = ra.denominator
        if d is None:
            self.denominator = None
        else:
            self.denominator = math.lcm((d * self.scale.denominator), self.shift.denominator)
        self.profile = profile if profile is not None else ra.profile

    @property
    def tower(self):
        return self.fixed_tower or self.a.tower

    def candidates(self):
        i = 0
        while True:
            t = self.a.candidate(i)
            if t is None:
                return
            e, c = t
            yield e * self.scale + self.shift, (self.fn(c) if self.fn else c)
            i += 1


class InfiniteSumRule(Rule):
    """sum over k >= 0 of series(k), where series(k) has order >= bound(k) -> oo."""

    def __init__(self, tower, series_fn, bound_fn, denominator=1, low=Fraction(0)):
        super().__init__(tower)
        self.series_fn = series_fn
        self.bound_fn = bound_fn
        self.denominator = denominator
        self.low = low

    def candidates(self):
        active = []  # [series, position]
        k = 0
        while True:
            nxt = None
            for st in active:
                t = st[0].candidate(st[1])
                if t is not None and (nxt is None or t[0] < nxt):
                    nxt = t[0]
            if nxt is None or self.bound_fn(k) <= nxt:
                active.append([self.series_fn(k), 0])
                k += 1
                continue
            acc = None
            for st in active:
                t = st[0].candidate(st[1])
                if t is not None and t[0] == nxt:
                    acc = t[1] if acc is None else acc + t[1]
                    st[1] += 1
            yield nxt, acc
            active = [st for st in active if st[0].candidate(st[1]) is not None]


class HenselRootRule(Rule):
    """z with z^m = u and z(0) = 1, by Newton iteration on exponent windows.

    The exponents of u lie in (1/N)Z for a known N; each Newton step doubles
    the number of lattice points known, and the new window is emitted
    (zeros included).
    """

    def __init__(self, u: "PuiseuxSeries", m: int):
        super().__init__(u.tower)
        self.u, self.m = u, m
        self.denominator = u.rule.denominator
        if self.denominator is None:
            raise ValueError("Hensel roots need exponents with bounded denominators")

    @property
    def tower(self):
        return self.u.tower

    def _u_coeffs(self, P):
        N = self.denominator
        out = {}
        i = 0
        while True:
            t = self.u.candidate(i)
            if t is None or t[0] >= Fraction(P, N):
                break
            out[int(t[0] * N)] = t[1]
            i += 1
        T = self.u.tower
        return [T.coerce(out[k]) if k in out else T.zero() for k in range(P)]

    def candidates(self):
        N = self.denominator
        m = self.m
        T = self.u.tower
        z = [T.one()]
        yield Fraction(0), T.one()
        P = 1
        while True:
            P2 = 2 * P
            T = self.u.tower
            u = self._u_coeffs(P2)
            z = [T.coerce(c) for c in z] + [T.zero()] * (P2 - len(z))
            # z <- z - (z^m - u) / (m z^(m-1))
            zm1 = _tpow(z, m - 1, P2, T)
            zm = _tmul(zm1, z, P2, T)
            num = [a - b for a, b in zip(zm, u)]
            den = [c * m for c in zm1]
            corr = _tmul(num, _tinv(den, P2, T), P2, T)
            z = [a - b for a, b in zip(z, corr)]
            for k in range(P, P2):
                yield Fraction(k, N), z[k]
            P = P2


def _tmul(a, b, P, T):
    out = [T.zero()] * P
    for i, x in enumerate(a[:P]):
        if not x:
            continue
        for j in range(min(len(b), P - i)):
            if b[j]:
                out[i + j] = out[i + j] + x * b[j]
    return out


def _tpow(a, n, P, T):
    out = [T.one()] + [T.zero()] * (P - 1)
    for _ in range(n):
        out = _tmul(out, a, P, T)
    return out


def _tinv(a, P, T):
    inv0 = a[0].inv()
    out = [inv0] + [T.zero()] * (P - 1)
    for k in range(1, P):
        acc = T.zero()
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j]:
                acc = acc + a[j] * out[k - j]
        out[k] = -(acc * inv0)
    return out


def _lcm(a, b):
    if a is None or b is None:
        return None
    return math.lcm(a, b)


def _combine_profiles(pa, pb):
    # the coefficients of a sum or product lie in the compositum
    pa, pb = pa or ("unknown",), pb or ("unknown",)
    if pa[0] in ("finite", "twist-finite") and pb[0] in ("finite", "twist-finite"):
        e = max(p[1] if p[0] == "twist-finite" else 0 for p in (pa, pb))
        return ("twist-finite", e) if e else ("finite",)
    return ("unknown",)


def _join(A: Tower, B: Tower) -> Tower:
    if A is B or B.is_prefix_of(A):
        return A
    if A.is_prefix_of(B):
        return B
    raise ValueError("series coefficients live in incompatible towers")


# -- the series object -----------------------------------------------------

class PuiseuxSeries:
    """A lazily produced series over a field tower."""

    SCAN_LIMIT = 2000

    def __init__(self, rule: Rule):
        self.rule = rule
        self._memo = []
        self._source = None
        self._done = False
        self._lock = threading.RLock()

    # -- construction helpers ------------------------------------------------
    @classmethod
    def finite(cls, tower: Tower, terms) -> "PuiseuxSeries":
        return cls(FiniteRule(tower, terms))

    @classmethod
    def zero(cls, tower: Tower) -> "PuiseuxSeries":
        return cls(FiniteRule(tower, []))

    @classmethod
    def monomial(cls, tower, exponent, coeff=1) -> "PuiseuxSeries":
        return cls(FiniteRule(tower, [(exponent, tower.coerce(coeff))]))

    @classmethod
    def template(cls, tower, exponent, coefficient, start=1, stop=None) -> "PuiseuxSeries":
        return cls(TemplateFamily(tower, exponent, coefficient, start, stop))

    @classmethod
    def geometric(cls, tower, step=1, start=0, coeff=1) -> "PuiseuxSeries":
        """sum over i >= start of coeff * x^(step*i)."""
        return cls(TemplateFamily(tower, ("affine", 0, step), Const(coeff), start))

    @property
    def tower(self) -> Tower:
        return self.rule.tower

    # -- production -----------------------------------------------------
    def candidate(self, i: int):
        """The i-th candidate term, or None past the end of a finite series."""
        memo = self._memo
        if i < len(memo):
            return memo[i]
        with self._lock:
            while len(memo) <= i and not self._done:
                if self._source is None:
                    self._source = self.rule.candidates()
                try:
                    memo.append(next(self._source))
                except StopIteration:
                    self._done = True
        return memo[i] if i < len(memo) else None

    def head(self, m: int) -> list:
        out = []
        for i in range(m):
            t = self.candidate(i)
            if t is None:
                break
            out.append(t)
        return out

    def exhausted_within(self, m: int) -> bool:
        return self.candidate(m) is None

    def truncate(self, bound, scan_limit: int | None = None) -> ExplicitFinite:
        limit = scan_limit or self.SCAN_LIMIT
        if isinstance(bound, int):
            bound = TermCount(bound)
        if isinstance(bound, TermCount):
            out = []
            i = 0
            while len(out) < bound.m:
                if i >= limit:
                    return ExplicitFinite(out, complete=False)
                t = self.candidate(i)
                if t is None:
                    break
                if t[1]:
                    out.append(t)
                i += 1
            return ExplicitFinite(out)
        b = _frac(bound.b)
        if b >= self.rule.accumulation:
            raise InfiniteTruncation(
                f"exponent bound {b} reaches the accumulation point {self.rule.accumulation}"
            )
        out = []
        i = 0
        while True:
            t = self.candidate(i)
            if t is None or t[0] >= b:
                break
            if t[1]:
                out.append(t)
            i += 1
            if i > limit * 50:
                raise InfiniteTruncation("scan limit exceeded below the exponent bound")
        return ExplicitFinite(out)

    def terms(self, m: int) -> list:
        return self.truncate(TermCount(m)).terms

    def nonzero_coefficients(self, i: int) -> list:
        return [c for _, c in self.terms(i)]

    def order(self, scan_limit: int | None = None):
        """Exponent of the first nonzero term, None for an exhausted zero series.

        Raises InfiniteTruncation if the scan limit is hit first.
        """
        limit = scan_limit or self.SCAN_LIMIT
        for i in range(limit):
            t = self.candidate(i)
            if t is None:
                return None
            if t[1]:
                return t[0]
        raise InfiniteTruncation("no nonzero term within the scan limit")

    def coefficient(self, e) -> FieldElement:
        e = _frac(e)
        if e >= self.rule.accumulation:
            raise InfiniteTruncation(f"exponent {e} lies past an accumulation point")
        i = 0
        while True:
            t = self.candidate(i)
            if t is None or t[0] > e:
                return self.tower.zero()
            if t[0] == e:
                return t[1]
            i += 1

    # -- arithmetic -----------------------------------------------------
    def _lift(self, other) -> "PuiseuxSeries":
        if isinstance(other, PuiseuxSeries):
            return other
        if isinstance(other, ExplicitFinite):
            return PuiseuxSeries.finite(self.tower, other.terms)
        return PuiseuxSeries.monomial(self.tower, 0, self.tower.coerce(other))

    def __add__(self, other):
        return PuiseuxSeries(SumRule(self, self._lift(other)))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(MapRule(self, coeff=lambda c: -c))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, PuiseuxSeries):
            for a, b in ((self, other), (other, self)):
                m = _base_monomial(b)
                if m is not None:
                    # multiplying by c x^e with c in the base keeps the coefficient field
                    e, c = m
                    return PuiseuxSeries(MapRule(a, shift=e, coeff=lambda x, c=c: x * c))
            return PuiseuxSeries(ProductRule(self, other))
        if isinstance(other, ExplicitFinite):
            return PuiseuxSeries(ProductRule(self, self._lift(other)))
        c = self.tower.coerce(other) if not isinstance(other, FieldElement) else other
        return PuiseuxSeries(MapRule(self, coeff=lambda x: x * c))

    __rmul__ = __mul__

    def shift(self, q) -> "PuiseuxSeries":
        """Multiply by x^q."""
        return PuiseuxSeries(MapRule(self, shift=q))

    def substitute_power(self, q) -> "PuiseuxSeries":
        """s(x^q) for positive rational q."""
        return PuiseuxSeries(MapRule(self, scale=q))

    def frobenius(self, r: int = 1) -> "PuiseuxSeries":
        """s^(p^r), computed termwise in characteristic p."""
        p = self.tower.char
        if r == 0:
            return self
        if not p:
            raise ValueError("termwise Frobenius needs positive characteristic")
        q = p**r
        return PuiseuxSeries(MapRule(self, scale=q, coeff=lambda c: c.frobenius(r), profile=_frob_profile(self.rule.profile, r)))

    def frobenius_root(self) -> "PuiseuxSeries":
        """The series whose p-th power is self; roots of coefficients are adjoined on demand."""
        p = self.tower.char
        holder = {"tower": self.tower}

        def root(c):
            T = _join(holder["tower"], c.tower)
            T, z = T.radical(c, p)
            holder["tower"] = T
            return z

        rule = MapRule(self, scale=Fraction(1, p), coeff=root, profile=("unknown",))
        return PuiseuxSeries(rule)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return PuiseuxSeries.monomial(self.tower, 0, 1)
        p = self.tower.char
        if p and n % p == 0:
            v = 0
            while n % p == 0:
                n //= p
                v += 1
            return (self**n).frobenius(v)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "PuiseuxSeries":
        """1/s via a geometric series in the normalized tail."""
        e0 = self.order()
        if e0 is None:
            raise ZeroDivisionError("inverse of the zero series")
        c0 = self.coefficient(e0)
        # s = c0 x^e0 (1 - w), ord w > 0
        w = -(self.shift(-e0) * c0.inv() - 1)
        w = PuiseuxSeries(MapRule(w, profile=("unknown",)))
        step = _positive_order(w)
        geo = geometric_sum(w, step)
        return geo.shift(-e0) * c0.inv()

    def __truediv__(self, other):
        if isinstance(other, PuiseuxSeries):
            return self * other.inverse()
        return self * self.tower.coerce(other).inv()

    def __repr__(self):
        return f"PuiseuxSeries({fmt_terms(self.head(6))} + ...)"

    def fmt(self, m: int = 8) -> str:
        """Nonzero terms among the first m candidates."""
        s = fmt_terms([t for t in self.head(m) if t[1]])
        return s if self.exhausted_within(m) else s + " + ..."


def _base_monomial(s: PuiseuxSeries):
    rule = s.rule
    if isinstance(rule, FiniteRule) and len(rule.terms) == 1:
        e, c = rule.terms[0]
        if c.in_prefix(0):
            return e, c
    return None


def _frob_profile(profile, r):
    if profile and profile[0] == "twist-finite":
        return ("twist-finite", max(profile[1] - r, 0)) if profile[1] > r else ("finite",)
    return profile


def _positive_order(w: PuiseuxSeries):
    for i in range(PuiseuxSeries.SCAN_LIMIT):
        t = w.candidate(i)
        if t is None:
            return None
        if t[1]:
            if t[0] <= 0:
                raise ValueError("expected a series of positive order")
            return t[0]
    raise InfiniteTruncation("no nonzero term within the scan limit")


def geometric_sum(w: PuiseuxSeries, order) -> PuiseuxSeries:
    """sum over k >= 0 of w^k, for w of positive order (None: w = 0)."""
    T = w.tower
    if order is None:
        return PuiseuxSeries.monomial(T, 0, 1)
    powers = [PuiseuxSeries.monomial(T, 0, 1)]
    lock = threading.Lock()

    def nth(k):
        with lock:
            while len(powers) <= k:
                powers.append(powers[-1] * w)
            return powers[k]

    rule = InfiniteSumRule(T, nth, lambda k: order * k, denominator=w.rule.denominator)
    rule._tower = T
    return PuiseuxSeries(rule)


# -- bivariate polynomials with series coefficients -------------------------------

class BivarPolynomial:
    """sum_j a_j(x) y^j with each a_j a series (often a polynomial)."""

    def __init__(self, tower: Tower, coeffs: dict):
        self.tower = tower
        self.coeffs = {}
        for j, a in coeffs.items():
            if not isinstance(a, PuiseuxSeries):
                if isinstance(a, dict):
                    a = PuiseuxSeries.finite(tower, list(a.items()))
                else:
                    a = PuiseuxSeries.finite(tower, [(0, a)])
            if isinstance(a.rule, FiniteRule) and not a.rule.terms:
                continue
            self.coeffs[j] = a
        if not self.coeffs:
            raise ValueError("the zero polynomial is not allowed here")

    @classmethod
    def from_terms(cls, tower, terms: dict) -> "BivarPolynomial":
        """From ``{(i, j): c}`` meaning c * x^i * y^j."""
        by_j: dict = {}
        for (i, j), c in terms.items():
            c = tower.coerce(c)
            if c:
                by_j.setdefault(j, []).append((i, c))
        return cls(tower, {j: PuiseuxSeries.finite(tower, ts) for j, ts in by_j.items()})

    @property
    def degree(self) -> int:
        return max(self.coeffs)

    def is_finite(self) -> bool:
        return all(isinstance(a.rule, FiniteRule) for a in self.coeffs.values())

    def terms(self) -> dict:
        """``{(i, j): c}`` for finite coefficients."""
        out = {}
        for j, a in self.coeffs.items():
            if not isinstance(a.rule, FiniteRule):
                raise ValueError("coefficient is an infinite series")
            for e, c in a.rule.terms:
                out[(e, j)] = c
        return out

    def substitute(self, s: PuiseuxSeries) -> PuiseuxSeries:
        acc = None
        for j in sorted(self.coeffs):
            term = self.coeffs[j] if j == 0 else self.coeffs[j] * (s**j)
            acc = term if acc is None else acc + term
        return acc

    def fmt(self, m: int = 8) -> str:
        parts = []
        for j in sorted(self.coeffs, reverse=True):
            a = self.coeffs[j]
            ys = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
            if isinstance(a.rule, FiniteRule):
                cs = fmt_terms(a.rule.terms)
            else:
                cs = a.fmt(m)
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
        return f"BivarPolynomial({self.fmt()})"


def substitute_poly(g: BivarPolynomial, s: PuiseuxSeries, budget) -> ExplicitFinite:
    """The initial segment of g(x, s): nonzero terms among the first candidates.

    ``budget`` is a TermCount (number of candidates examined) or an
    ExponentBound.  An empty result means zero to this budget.
    """
    r = g.substitute(s)
    if isinstance(budget, int):
        budget = TermCount(budget)
    if isinstance(budget, TermCount):
        return ExplicitFinite([t for t in r.head(budget.m) if t[1]])
    return r.truncate(budget)


def hensel_unit_root(u: PuiseuxSeries, m: int) -> PuiseuxSeries:
    """The root z of z^m = u with z(0) = 1 (u(0) must be 1)."""
    p = u.tower.char
    if p and m % p == 0:
        raise RamifiedRoot(f"{m} is divisible by the characteristic {p}")
    if m < 1:
        raise ValueError("m must be positive")
    first = u.candidate(0)
    if first is None or first[0] != 0 or first[1] != u.tower.one():
        raise ValueError("u must have constant term 1")
    if m == 1:
        return u
    return PuiseuxSeries(HenselRootRule(u, m))


def coefficient_prefix_tower(s: PuiseuxSeries, i: int, depth: int | None = None):
    """The field generated over k by the first i nonzero coefficients.

    ``depth`` selects the prefix of the series tower that plays the role of
    k (default: the base, with no algebraic steps).  Returns a
    :class:`~algseries.fields.subfield.GeneratedField`.
    """
    from .fields.subfield import prefix_or_generated

    coeffs = s.nonzero_coefficients(i)
    T = s.tower
    return prefix_or_generated(T, depth or 0, coeffs)
