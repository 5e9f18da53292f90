"""Randomized property suites (hypothesis), each over CASES examples."""
from __future__ import annotations

from functools import lru_cache

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from algseries import (
    BivarPolynomial,
    ExponentBound,
    IndexedRoot,
    PuiseuxSeries,
    build_chain_from_series,
    make_field,
    value_of,
)
from algseries.fields.subfield import GeneratedField, minimal_polynomial
from algseries.fields.tower import SEPARABLE

CASES = 100
SETTINGS = settings(max_examples=CASES, deadline=None, derandomize=True,
                    suppress_health_check=[HealthCheck.too_slow])


# -- towers ------------------------------------------------------------------

@lru_cache(maxsize=None)
def towers():
    out = {}
    Q = make_field(0)
    T, _ = Q.radical(Q.const(2), 2)
    T, _ = T.radical(T.const(3), 3)
    out["Q(2^(1/2), 3^(1/3))"] = T
    F2 = make_field(2)
    T = F2.adjoin([1, 1, 1], SEPARABLE, gen="a")
    T = T.adjoin([1, 1, 0, 1], SEPARABLE, gen="b")
    out["F_64"] = T
    F = make_field(5, generators=["t"])
    out["F_5(t)(t^(1/5))"] = F.radical(F.gen("t"), 5)[0]
    F = make_field(7, generators=["t"])
    out["F_7(t)((t+1)^(1/2))"] = F.radical(F.gen("t") + 1, 2)[0]
    F3 = make_field(3, generators=["s"])
    T, _ = F3.radical(F3.gen("s"), 3)
    T, _ = T.radical(T.gen(T.steps[0].gen), 3)
    out["F_3(s)(s^(1/9))"] = T
    return out


NAMES = sorted(towers())
POSITIVE = [n for n in NAMES if towers()[n].char]


@st.composite
def elements(draw, name):
    T = towers()[name]
    base = T.base.generators
    acc = T.zero()
    for exps in T.monomials():
        c = T.const(draw(st.integers(-4, 4)))
        if base:
            c = c + T.const(draw(st.integers(-2, 2))) * T.gen(base[0])
        acc = acc + c * T.monomial(exps)
    if base and draw(st.booleans()):
        acc = acc / (T.gen(base[0]) + draw(st.integers(1, 3)))
    return acc


@st.composite
def triples(draw, names=tuple(NAMES)):
    name = draw(st.sampled_from(names))
    return name, draw(elements(name)), draw(elements(name)), draw(elements(name))


@SETTINGS
@given(triples())
def test_field_axioms(case):
    name, a, b, c = case
    T = towers()[name]
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + T.zero() == a and a * T.one() == a
    assert a - a == T.zero()
    if a:
        assert a * a.inv() == T.one()
        assert (b / a) * a == b


@SETTINGS
@given(triples())
def test_degree_multiplicativity(case):
    name, a, b, _c = case
    T = towers()[name]
    for d in range(T.depth + 1):
        assert T.degree == T.degree_over(d) * T.prefix(d).degree
    da = GeneratedField(T, 0, [a]).degree
    dab = GeneratedField(T, 0, [a, b]).degree
    assert dab == GeneratedField(T, 0, [b, a]).degree
    assert dab % da == 0 and T.degree % dab == 0
    mp = minimal_polynomial(a)
    assert len(mp) - 1 == da
    acc = T.zero()
    for c in reversed(mp):
        acc = acc * a + c
    assert not acc


@SETTINGS
@given(triples(tuple(POSITIVE)))
def test_frobenius_and_pth_root(case):
    name, a, b, _c = case
    p = towers()[name].char
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()
    assert a.frobenius(2) == a**(p * p)
    assert a.frobenius().pth_root() == a
    r = a.pth_root()
    if r is not None:
        assert r**p == a


# -- series ------------------------------------------------------------------

SERIES_FIELDS = {"Q": make_field(0), "F_3": make_field(3)}


@st.composite
def series(draw, F):
    n = draw(st.integers(0, 4))
    terms = [(draw(st.fractions(0, 3, max_denominator=3)), draw(st.integers(-3, 3))) for _ in range(n)]
    s = PuiseuxSeries.finite(F, terms)
    if draw(st.booleans()):
        step = draw(st.sampled_from([1, 2]))
        s = s + PuiseuxSeries.geometric(F, step=step, start=1, coeff=draw(st.integers(1, 2)))
    return s


@st.composite
def series_triples(draw):
    F = SERIES_FIELDS[draw(st.sampled_from(sorted(SERIES_FIELDS)))]
    return F, draw(series(F)), draw(series(F)), draw(series(F))


BOUND = ExponentBound(6)


def _cut(s):
    return s.truncate(BOUND)


@SETTINGS
@given(series_triples())
def test_series_ring_axioms(case):
    F, a, b, c = case
    zero = PuiseuxSeries.zero(F)
    one = PuiseuxSeries.monomial(F, 0, 1)
    assert _cut(a + b) == _cut(b + a)
    assert _cut(a * b) == _cut(b * a)
    assert _cut((a + b) + c) == _cut(a + (b + c))
    assert _cut((a * b) * c) == _cut(a * (b * c))
    assert _cut(a * (b + c)) == _cut(a * b + a * c)
    assert _cut(a + zero) == _cut(a) and _cut(a * one) == _cut(a)
    assert _cut(a - a).is_zero()


# -- values ------------------------------------------------------------------

@lru_cache(maxsize=None)
def chain():
    k = make_field(5, families=["t"])
    s = PuiseuxSeries.template(k, ("affine", 0, 1), IndexedRoot("t", 1))
    return build_chain_from_series(s, 4)


@st.composite
def uv_polys(draw):
    k = chain().arc.tower.prefix(0)
    t1 = k.gen("t1")
    while True:
        terms = {}
        for _ in range(draw(st.integers(1, 4))):
            i, j = draw(st.integers(0, 5)), draw(st.integers(0, 5))
            terms[(i, j)] = k.const(draw(st.integers(1, 4))) * t1 ** draw(st.integers(0, 1))
        terms = {m: c for m, c in terms.items() if c}
        if terms:
            return terms


def _poly(terms):
    return BivarPolynomial.from_terms(chain().arc.tower.prefix(0), terms)


def _mul(f, g):
    out = {}
    for (i1, j1), a in f.items():
        for (i2, j2), b in g.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out[key] + a * b if key in out else a * b
    return {m: c for m, c in out.items() if c}


def _add(f, g):
    out = dict(f)
    for m, c in g.items():
        out[m] = out[m] + c if m in out else c
    return {m: c for m, c in out.items() if c}


@SETTINGS
@given(uv_polys(), uv_polys())
def test_value_multiplicative(f, g):
    ch = chain()
    assert value_of(ch, _poly(_mul(f, g))) == value_of(ch, _poly(f)) + value_of(ch, _poly(g))


@SETTINGS
@given(uv_polys(), uv_polys())
def test_value_ultrametric(f, g):
    ch = chain()
    h = _add(f, g)
    if not h:
        return
    vf, vg, vh = (value_of(ch, _poly(x)) for x in (f, g, h))
    assert vh >= min(vf, vg)
    if vf != vg:
        assert vh == min(vf, vg)
