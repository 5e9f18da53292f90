from __future__ import annotations

import pytest

from algseries import (
    IndexedRoot,
    PrimeRadical,
    PuiseuxSeries,
    build_chain_from_series,
    build_infinite_residue_chain,
    classify_rank_increase,
    completion_witness,
    make_field,
    value_of,
)
from algseries.errors import NotApplicable, ReducibleWitness, ValueExceedsBudget

Q = make_field(0)


@pytest.fixture(scope="module")
def inseparable_chain():
    k = make_field(5, families=["t"])
    s = PuiseuxSeries.template(k, ("affine", 0, 1), IndexedRoot("t", 1))
    return build_chain_from_series(s, 6)


def test_generating_sequence(inseparable_chain):
    ch = inseparable_chain
    assert ch.residue_degrees() == [1, 5, 5, 5, 5, 5, 5]
    gens = {g["name"]: g for g in ch.generators}
    assert gens["v1"]["definition"] == "(v/u)^5 - (t1)"
    assert gens["v2"]["definition"] == "(v1/u^5) - (t2)"
    assert all(gens[f"v{j}"]["value"] == 5 for j in range(1, 7))


def test_values(inseparable_chain):
    ch = inseparable_chain
    assert value_of(ch, "u") == 1 and value_of(ch, "v") == 1
    assert value_of(ch, "v^5 - t1*u^5") == 10
    assert value_of(ch, "v^5 - t1*u^5 - t2*u^10") == 15


def test_value_budget(inseparable_chain):
    with pytest.raises(ValueExceedsBudget):
        value_of(inseparable_chain, "v^5 - t1*u^5", budget=8)


def test_rank_increase_and_witness(inseparable_chain):
    v = classify_rank_increase(inseparable_chain)
    assert v.kind == "rank-increases" and v.degree == 5 and v.frame_index == 1
    w = completion_witness(inseparable_chain, 20)
    assert [a.fmt() for a, _ in w.steps] == ["t2", "t3", "t4", "t5"]
    assert w.values == [5, 10, 15, 20] and w.final_value == 25


def test_rational_arc():
    ch = build_chain_from_series(PuiseuxSeries.geometric(Q, start=1), 6)
    assert classify_rank_increase(ch).kind == "rank-increases"
    assert completion_witness(ch, 5).values == [1, 2, 3, 4, 5]


def test_finite_arc_has_infinite_final_value():
    T, r = Q.radical(Q.const(2), 2)
    ch = build_chain_from_series(PuiseuxSeries.finite(T, [(1, r)]), 4)
    assert ch.residue_degrees() == [1, 2, 2, 2, 2]
    assert completion_witness(ch, 5).final_value == float("inf")


def test_independent_radicals_do_not_stabilize():
    s = PuiseuxSeries.template(Q, ("affine", 0, 1), PrimeRadical())
    ch = build_chain_from_series(s, 4)
    assert ch.residue_degrees() == [1, 2, 4, 8, 16]
    assert classify_rank_increase(ch).kind == "rank-does-not-increase"
    with pytest.raises(NotApplicable):
        completion_witness(ch, 5)


def test_schedule_chain_over_f2():
    F2 = make_field(2)
    ch = build_infinite_residue_chain(F2, [[1, 1, 1], [1, 1, 0, 1], [1, 0, 1, 0, 0, 1]])
    assert ch.residue_degrees() == [1, 2, 6, 30]
    assert classify_rank_increase(ch).degrees == [2, 6, 30]
    assert ch.frames[-1].tower.conditional() == []
    with pytest.raises(NotApplicable):
        value_of(ch, "v")


def test_schedule_rejects_reducible_step():
    F2 = make_field(2)
    with pytest.raises(ReducibleWitness):
        build_infinite_residue_chain(F2, [[1, 1, 1], [1, 1, 1]])  # y^2 + y + 1 splits over F_4
