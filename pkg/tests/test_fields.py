from __future__ import annotations

from fractions import Fraction

import pytest

from algseries import make_field
from algseries.errors import (
    BadInseparableShape,
    DuplicateGenerator,
    NonPrimeCharacteristic,
    NotMonic,
    NotSeparable,
    ParseError,
    ReducibleWitness,
)
from algseries.fields import INSEPARABLE, SEPARABLE
from algseries.fields.subfield import GeneratedField, minimal_polynomial


@pytest.fixture
def Q():
    return make_field(0)


def test_quadratic_arithmetic(Q):
    T, r = Q.radical(Q.const(2), 2)
    assert T.degree == 2
    assert r * r == T.const(2)
    assert (1 + r).inv() == r - 1
    assert (r / 2) * 2 == r
    assert r.fmt() == T.describe()["steps"][0]["gen"]


def test_radical_reuses_existing_roots(Q):
    T, r = Q.radical(Q.const(2), 2)
    T2, r2 = T.radical(T.const(2), 2)
    assert T2 is T and r2 == r
    T3, s = T.radical(T.const(8), 2)  # 8 = (2*sqrt 2)^2 already has a root
    assert T3 is T and s * s == T.const(8)


def test_rational_roots_need_no_step(Q):
    T, r = Q.radical(Q.const(Fraction(9, 4)), 2)
    assert T is Q and r * r == Q.const(Fraction(9, 4))


def test_minimal_polynomial_of_sum_of_square_roots(Q):
    T, a = Q.radical(Q.const(2), 2)
    T, b = T.radical(T.const(3), 2)
    mp = minimal_polynomial(T.coerce(a) + b)
    assert mp == [T.const(c).restrict(0) for c in (1, 0, -10, 0, 1)]
    assert GeneratedField(T, 0, [T.coerce(a) + b]).degree == 4


def test_finite_field_of_four_elements():
    F2 = make_field(2)
    T = F2.adjoin([1, 1, 1], SEPARABLE, gen="a")
    a = T.gen("a")
    assert a * a + a + 1 == T.zero()
    assert a**3 == T.one()
    assert a.frobenius(2) == a  # x -> x^4 is the identity on F_4
    assert T.describe()["steps"][0]["certificate"] == "proved"


def test_inseparable_step_and_pth_roots():
    F = make_field(5, generators=["t"])
    t = F.gen("t")
    assert t.pth_root() is None
    assert (t**5).pth_root() == t
    T, s = F.radical(t, 5)
    assert T.steps[0].kind == INSEPARABLE
    assert s**5 == T.coerce(t)
    assert T.coerce(t).pth_root() == s
    assert (s + 1).frobenius() == T.coerce(t) + 1


def test_prefix_and_restrict():
    F = make_field(3, generators=["s"])
    T, a = F.radical(F.gen("s"), 3)
    T, b = T.radical(a, 3)
    assert T.degree == 9 and T.degree_over(1) == 3
    assert (b**3).level() == 1
    assert (b**3).restrict(1) == T.prefix(1).coerce(a)
    assert b.level() == 2
    with pytest.raises(ValueError):
        b.restrict(1)


def test_indexed_families():
    k = make_field(5, families=["t"])
    t12 = k.gen("t12")
    assert t12.fmt() == "t12"
    T = k.parse("t1^(1/5) + t2").tower
    assert T.degree == 5


def test_parse_errors(Q):
    with pytest.raises(ParseError):
        Q.parse("2 $ 3")


def test_construction_errors(Q):
    with pytest.raises(NonPrimeCharacteristic):
        make_field(4)
    with pytest.raises(NotMonic):
        Q.adjoin([-2, 0, 2])
    with pytest.raises(ReducibleWitness):
        Q.adjoin([-4, 0, 1])
    F = make_field(5, generators=["t"])
    with pytest.raises(NotSeparable):
        F.adjoin([-F.gen("t"), 0, 0, 0, 0, 1], SEPARABLE)
    with pytest.raises(BadInseparableShape):
        F.adjoin([-F.gen("t"), 1, 0, 0, 0, 1], INSEPARABLE)
    with pytest.raises(BadInseparableShape):
        Q.adjoin([-2, 0, 1], INSEPARABLE)
    T = Q.adjoin([-2, 0, 1], gen="r")
    with pytest.raises(DuplicateGenerator):
        T.adjoin([-3, 0, 1], gen="r")


def test_describe_is_exact(Q):
    T, _ = Q.radical(Q.const(Fraction(1, 3)), 2)
    d = T.describe()
    assert d["degree"] == 2 and d["char"] == 0
    assert d["steps"][0]["minpoly"] == ["-1/3", "0", "1"]
