from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

import pytest

from algseries.errors import ParseError, ValidationError
from algseries.multivar import MultiSeries
from algseries.series import ExponentBound, PuiseuxSeries, TermCount
from algseries.specs import parse_spec

DATA = Path(__file__).parent / "data"

AFFINE = {"form": "affine", "a": "0", "b": "1"}


def test_file_and_dict_agree():
    a = parse_spec(str(DATA / "root_family.json"))
    b = parse_spec({"field": {"char": 5, "families": ["t"]},
                    "rule": {"kind": "template", "exponent": AFFINE,
                             "coefficient": {"form": "indexed-root", "family": "t", "root_e": 1}}})
    assert a.series.fmt(3) == b.series.fmt(3)
    assert a.tower.char == 5 and a.header()["declared_irreducible"] == []


def test_json_literal():
    s = parse_spec('{"field": {"char": 0}, "rule": {"kind": "geometric", "start": 1}}').series
    assert s.truncate(TermCount(3)).exponents() == [1, 2, 3]


def test_field_steps_and_explicit_terms():
    spec = parse_spec(str(DATA / "sqrt2.json"))
    assert spec.tower.degree == 2
    got = spec.series.truncate(ExponentBound(3)).exponents()
    assert got == [1, Fraction(5, 2)]


def test_radical_in_a_coefficient_grows_the_tower():
    spec = parse_spec({"field": {"char": 0}, "rule": {"kind": "explicit", "terms": [["1", "3^(1/2)"]]}})
    assert spec.tower.degree == 2


def test_declared_steps_are_surfaced():
    step = {"gen": "w", "minpoly": ["t", "1", "0", "0", "0", "0", "1"]}  # y^6 + y + t
    field = {"char": 5, "generators": ["t"], "steps": [dict(step, declared=True)]}
    assert parse_spec({"field": field}).header()["declared_irreducible"] == ["w"]
    with pytest.raises(ValidationError, match=re.escape("field.steps[0]: IrreducibilityUnverified")):
        parse_spec({"field": dict(field, steps=[step])})


def test_provable_steps_ignore_the_declaration():
    step = {"gen": "w", "minpoly": ["-5", "0", "0", "1"], "declared": True}
    assert parse_spec({"field": {"char": 0, "steps": [step]}}).header()["declared_irreducible"] == []


def test_sum_of_rules():
    spec = parse_spec({"field": {"char": 0}, "rule": {"kind": "sum", "terms": [
        {"kind": "explicit", "terms": [["1", "1"]]},
        {"kind": "explicit", "terms": [["1", "-1"], ["2", "1"]]}]}})
    assert spec.series.truncate(ExponentBound(5)).exponents() == [2]


def test_multivariate_spec():
    spec = parse_spec(str(DATA / "multi.json"))
    assert isinstance(spec.series, MultiSeries)


def test_poly_and_schedule():
    assert parse_spec(str(DATA / "nodal.json")).poly.degree == 2
    assert len(parse_spec(str(DATA / "schedule.json")).schedule) == 3


def test_branch_rule_expands():
    spec = parse_spec({"field": {"char": 0}, "rule": {"kind": "branch", "poly": "y - x*y - x", "budget": 6}})
    assert isinstance(spec.series, PuiseuxSeries)
    assert spec.series.truncate(ExponentBound(5)).exponents() == [1, 2, 3, 4]


def test_syntax_error_position():
    with pytest.raises(ParseError, match="line 2 column"):
        parse_spec(str(DATA / "bad_syntax.json"))


def test_missing_file():
    with pytest.raises(ParseError, match="not found"):
        parse_spec(str(DATA / "missing.json"))


@pytest.mark.parametrize("obj, path", [
    ({"rule": {"kind": "template", "exponent": AFFINE, "coefficient": {"form": "bogus"}}},
     "rule.coefficient.form"),
    ({"rule": {"kind": "template", "exponent": {"form": "bogus"}, "coefficient": {"form": "const"}}},
     "rule.exponent.form"),
    ({"rule": {"kind": "template", "exponent": AFFINE}}, "rule.coefficient"),
    ({"rule": {"kind": "bogus"}}, "rule.kind"),
    ({"rule": {"kind": "explicit", "terms": [["1"]]}}, "rule.terms[0]"),
    ({"rule": {"kind": "explicit", "terms": [["a/b", "1"]]}}, "rule.terms[0][0]"),
    ({"field": {"char": "two"}}, "field.char"),
    ({"field": {"steps": [{"kind": "odd", "minpoly": ["1", "1"]}]}}, "field.steps[0].kind"),
    ({"field": {"steps": [{"gen": "w"}]}}, "field.steps[0].minpoly"),
    ({"field": {"char": 5}, "rule": {"kind": "template", "exponent": AFFINE,
                                     "coefficient": {"form": "indexed-root", "family": "s"}}},
     "rule.coefficient.family"),
    ({"vars": ["x", "x"], "rule": {"kind": "binomial"}}, "vars"),
    ({"vars": ["x1", "x2"], "rule": {"kind": "univariate-in-var", "var": "z",
                                     "series": {"kind": "geometric"}}}, "rule.var"),
    ({"vars": ["x1", "x2"], "rule": {"kind": "monomial-subst", "vector": [1],
                                     "series": {"kind": "geometric"}}}, "rule.vector"),
    ({"schedule": [["1"]]}, "schedule"),
    ({"poly": "0"}, "poly"),
    ({"mode": "sideways"}, "mode"),
])
def test_validation_errors_name_the_field(obj, path):
    with pytest.raises(ValidationError) as info:
        parse_spec(obj)
    assert str(info.value).startswith(path + ":")
