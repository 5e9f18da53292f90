from __future__ import annotations

from math import comb

from algseries import (
    IndexedRoot,
    MultiSeries,
    PrimeRadical,
    PuiseuxSeries,
    check_multivar,
    fiber_series,
    make_field,
    slice_series,
)
from algseries.multivar import reassemble

Q = make_field(0)


def root_family_multi(vector=(1, 1)):
    k = make_field(5, families=["t"])
    s = PuiseuxSeries.template(k, ("affine", 0, 1), IndexedRoot("t", 1))
    return MultiSeries.monomial_subst(s, vector)


def test_binomial_fibers_are_binomial_coefficients():
    b = MultiSeries.binomial(2, Q)
    fib = fiber_series(b, 2, (2, 0))
    got = [c for _e, c in fib.head(6)]
    assert got == [Q.const(comb(n + 2, 2)) for n in range(6)]
    assert all(c == Q.one() for _e, c in fiber_series(b, 2, (0, 0)).head(6))


def test_slices_of_a_polynomial():
    pq = MultiSeries.explicit(2, Q, {(1, 1): 1, (0, 2): 1})
    assert slice_series(pq, 1).terms(5) == {(1,): Q.one()}
    assert slice_series(pq, 2).terms(5) == {(0,): Q.one()}
    assert slice_series(pq, 0).terms(5) == {}


def test_reassembly_recovers_the_series():
    for s in (MultiSeries.binomial(2, Q), root_family_multi(), MultiSeries.binomial(3, Q)):
        assert reassemble(s, 8, 8) == s.terms(8)


def test_arithmetic():
    x1 = MultiSeries.explicit(2, Q, {(1, 0): 1})
    x2 = MultiSeries.explicit(2, Q, {(0, 1): 1})
    sq = (x1 + x2) * (x1 + x2)
    assert sq.terms(4) == {(2, 0): Q.one(), (1, 1): Q.const(2), (0, 2): Q.one()}
    assert (sq - x1 * x1).terms(4) == {(1, 1): Q.const(2), (0, 2): Q.one()}


def test_inseparable_family_is_algebraic_with_one_twist():
    v = check_multivar(root_family_multi())
    assert (v.kind, v.r, v.degree) == ("algebraic", 1, 1)
    assert all(p["verdict"] == "algebraic" for p in v.diagnostics["probes"])


def test_axis_symmetry():
    a = check_multivar(root_family_multi((1, 2)), i_max=4)
    b = check_multivar(root_family_multi((2, 1)), i_max=4)
    assert (a.kind, a.r, a.degree) == (b.kind, b.r, b.degree) == ("algebraic", 1, 1)


def test_separation_through_a_fiber():
    rad = PuiseuxSeries.template(Q, ("affine", 0, 1), PrimeRadical())
    m = MultiSeries.univariate(2, rad, 0) * MultiSeries.explicit(2, Q, {(0, 1): 1})
    v = check_multivar(m, i_max=4)
    assert v.kind == "not-algebraic"
    assert "fiber" in v.justification


def test_square_root_coefficient():
    T, r = Q.radical(Q.const(2), 2)
    v = check_multivar(MultiSeries.explicit(2, T, {(1, 1): r}))
    assert v.kind == "algebraic" and v.annpoly.fmt() == "y^2 - 2*x1^2*x2^2"


def test_one_variable_delegates():
    v = check_multivar(MultiSeries.univariate(1, PuiseuxSeries.geometric(Q, start=1), 0))
    assert v.kind == "algebraic" and v.degree == 1
