from __future__ import annotations

import json
from pathlib import Path

import pytest

from algseries import cli

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_check_inseparable_family(capsys):
    code, rep = run_json(capsys, "check", DATA / "root_family.json")
    assert code == cli.EXIT_OK
    res = rep["result"]
    assert (res["verdict"], res["r"], res["degree"]) == ("algebraic", 1, 1)
    assert res["diagnostics"]["method"] == "frobenius"
    assert rep["header"]["declared_irreducible"] == []


def test_check_artin_schreier(capsys):
    code, rep = run_json(capsys, "check", DATA / "accumulating.json")
    assert code == cli.EXIT_OK and rep["result"]["annpoly"] == "y^3 + 2*x^2*y + 2*x^2"


def test_not_algebraic_and_inconclusive_exit_codes(capsys):
    code, rep = run_json(capsys, "check", DATA / "radicals.json", "--steps", 4)
    assert code == cli.EXIT_OK and rep["result"]["verdict"] == "not-algebraic"
    code, rep = run_json(capsys, "check", DATA / "radicals.json", "--steps", 1)
    assert code == cli.EXIT_INCONCLUSIVE and rep["result"]["verdict"] == "inconclusive"


def test_fractional_exponents_with_a_square_root(capsys):
    code, rep = run_json(capsys, "check", DATA / "sqrt2.json")
    assert code == cli.EXIT_OK and rep["result"]["verdict"] == "algebraic"


def test_multivariate_check(capsys):
    code, rep = run_json(capsys, "check", DATA / "multi.json")
    assert code == cli.EXIT_OK and rep["result"]["verdict"] == "algebraic"


def test_annpoly(capsys):
    code, rep = run_json(capsys, "annpoly", DATA / "accumulating.json", "--degree", 3, "--xdegree", 2)
    assert code == cli.EXIT_OK
    assert rep["result"]["annpoly"] == "y^3 + 2*x^2*y + 2*x^2"


@pytest.mark.parametrize("command", ["expand", "resolve"])
def test_branch_commands(capsys, command):
    code, rep = run_json(capsys, command, DATA / "nodal.json", "--terms", 4)
    assert code == cli.EXIT_OK and "result" in rep


def test_seed_roots_file(capsys):
    code, out = run(capsys, "expand", DATA / "tangent.json", "--seed-roots", DATA / "seeds.json")
    assert code == cli.EXIT_OK and "-2^(1/2)" in out


def test_valuation_subcommands(capsys):
    code, rep = run_json(capsys, "valuation", "value", DATA / "root_family.json", "v^5-t1*u^5")
    assert code == cli.EXIT_OK and rep["result"]["value"] == 10
    code, rep = run_json(capsys, "valuation", "classify", DATA / "root_family.json")
    assert rep["result"]["classification"]["verdict"] == "rank-increases"
    code, rep = run_json(capsys, "valuation", "witness", DATA / "root_family.json", "--budget", 12)
    assert [s["n"] for s in rep["result"]["steps"]] == [5, 10]
    assert rep["result"]["final_value"] == 15
    code, _ = run(capsys, "valuation", "corollary", DATA / "schedule.json")
    assert code == cli.EXIT_OK


def test_value_budget_is_inconclusive(capsys):
    code, _ = run(capsys, "valuation", "value", DATA / "root_family.json", "v^5-t1*u^5", "--value-budget", 5)
    assert code == cli.EXIT_INCONCLUSIVE


def test_output_is_deterministic(capsys):
    _, first = run(capsys, "check", DATA / "accumulating.json")
    _, second = run(capsys, "check", DATA / "accumulating.json")
    assert first == second


def test_text_format(capsys):
    code, out = run(capsys, "check", DATA / "root_family.json", "--format", "text")
    assert code == cli.EXIT_OK
    assert "verdict: algebraic" in out and "command: check" in out


def test_syntax_error_carries_position(capsys):
    code, rep = run_json(capsys, "check", DATA / "bad_syntax.json")
    assert code == cli.EXIT_ERROR
    assert rep["error"] == "ParseError" and "line 2 column" in rep["message"]


@pytest.mark.parametrize("argv", [
    ["check", str(DATA / "missing.json")],
    ["check", str(DATA / "root_family.json"), "--trunc", "0"],
    ["check", str(DATA / "nodal.json")],
])
def test_errors_exit_one(capsys, argv):
    code, rep = run_json(capsys, *argv)
    assert code == cli.EXIT_ERROR and "error" in rep


def test_run_api_matches_main(capsys):
    code, report = cli.run(cli.JobSpec("check", str(DATA / "accumulating.json")))
    _, out = run(capsys, "check", DATA / "accumulating.json")
    assert code == cli.EXIT_OK and cli.render(report, "json") + "\n" == out


def test_jobspec_validation():
    with pytest.raises(ValueError):
        cli.JobSpec("frobnicate", "x.json")
    with pytest.raises(ValueError):
        cli.JobSpec("check", "x.json", fmt="xml")
