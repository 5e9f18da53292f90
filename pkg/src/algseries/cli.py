"""Command-line front end.

Exit status: 0 for a definite answer, 2 for an inconclusive one, 1 for
errors.  JSON reports use sorted keys, so identical inputs give
byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AlgSeriesError
from .series import INF, fmt_terms

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2
COMMANDS = ("check", "annpoly", "expand", "resolve", "valuation")


@dataclass
class JobSpec:
    command: str
    spec: str
    trunc: int = 40
    steps: int = 6
    twists: int = 3
    value_budget: int = 1024
    fmt: str = "json"
    seed_roots: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        for name in ("trunc", "steps", "twists", "value_budget"):
            if getattr(self, name) < (0 if name == "twists" else 1):
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.fmt not in ("text", "json"):
            raise ValueError("--format must be text or json")


def _plain(v):
    """Exact, JSON-safe values: fractions and infinities become strings."""
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, float):
        return "inf" if v == INF else str(Fraction(v))
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    if hasattr(v, "fmt"):
        return v.fmt()
    return str(v)


def _seeds(job: JobSpec) -> list:
    if not job.seed_roots:
        return []
    with open(job.seed_roots, encoding="utf-8") as fh:
        data = json.load(fh)
    return list(data.get("seeds", data) if isinstance(data, dict) else data)


# -- commands -------------------------------------------------------------------

def _cmd_check(job, spec):
    from .algebraicity import check_full
    from .multivar import MultiSeries, check_multivar

    s = _need_series(spec)
    if isinstance(s, MultiSeries):
        v = check_multivar(s, job.steps, job.twists, job.trunc,
                           probe_bound=job.extra.get("probe_bound", 2))
    else:
        v = check_full(s, job.steps, job.twists, job.trunc)
    code = EXIT_INCONCLUSIVE if v.kind == "inconclusive" else EXIT_OK
    return code, v.to_json()


def _cmd_annpoly(job, spec):
    from .algebraicity import ann_poly_reconstruct

    s = _need_series(spec)
    p = s.tower.char
    dy = job.extra.get("degree") or max(4, p)
    dx = job.extra.get("xdegree") or 4
    g = ann_poly_reconstruct(s, dy, dx, terms=job.trunc)
    if g is None:
        return EXIT_INCONCLUSIVE, {"annpoly": None, "degree_bound": dy, "xdegree_bound": dx, "terms": job.trunc}
    return EXIT_OK, {"annpoly": g.fmt(), "degree": g.degree, "terms": job.trunc}


def _expand(job, spec):
    from .blowup import RootOracle, expand_branch

    if spec.poly is None:
        raise AlgSeriesError("this command needs a \"poly\" entry")
    oracle = RootOracle(seeds=spec.seeds)
    mode = spec.mode
    budget = max(job.steps, job.extra.get("terms", 15))
    return expand_branch(spec.poly, oracle, mode, budget=budget)


def _cmd_expand(job, spec):
    s, chain = _expand(job, spec)
    n = job.extra.get("terms", 15)
    terms = s.head(n)
    return EXIT_OK, {
        "coefficients": [[_plain(e), c.fmt()] for e, c in terms],
        "series": fmt_terms([t for t in terms if t[1]]),
        "chain": chain.to_json(),
    }


def _cmd_resolve(job, spec):
    _s, chain = _expand(job, spec)
    return EXIT_OK, chain.to_json()


def _cmd_valuation(job, spec):
    from . import valuation as V

    sub = job.extra.get("sub", "build")
    if sub == "corollary":
        sched = spec.schedule
        if job.extra.get("schedule_file"):
            from .specs import load_json

            obj, _ = load_json(job.extra["schedule_file"])
            sched = [[str(c) for c in h] for h in obj.get("schedule", [])]
        if not sched:
            raise AlgSeriesError("corollary needs a residue schedule")
        chain = V.build_infinite_residue_chain(spec.tower, sched)
        verdict = V.classify_rank_increase(chain)
        code = EXIT_INCONCLUSIVE if verdict.kind == "inconclusive" else EXIT_OK
        return code, {"chain": chain.to_json(), "classification": verdict.to_json()}
    s = _need_series(spec)
    chain = V.build_chain_from_series(s, job.steps)
    if sub == "build":
        return EXIT_OK, chain.to_json()
    if sub == "value":
        expr = job.extra.get("expr")
        if not expr:
            raise AlgSeriesError("value needs a polynomial expression in u and v")
        try:
            val = V.value_of(chain, expr, budget=job.value_budget)
        except AlgSeriesError as exc:
            if type(exc).__name__ == "ValueExceedsBudget":
                return EXIT_INCONCLUSIVE, {"expression": expr, "value": None, "reason": str(exc)}
            raise
        return EXIT_OK, {"expression": expr, "value": _plain(val)}
    if sub == "classify":
        verdict = V.classify_rank_increase(chain)
        code = EXIT_INCONCLUSIVE if verdict.kind == "inconclusive" else EXIT_OK
        return code, {"residue_degrees": chain.residue_degrees(), "classification": verdict.to_json()}
    if sub == "witness":
        w = V.completion_witness(chain, job.extra.get("budget", 20))
        return EXIT_OK, w.to_json()
    raise AlgSeriesError(f"unknown valuation subcommand {sub!r}")


def _need_series(spec):
    if spec.series is None:
        raise AlgSeriesError("this command needs a series \"rule\"")
    return spec.series


HANDLERS = {
    "check": _cmd_check,
    "annpoly": _cmd_annpoly,
    "expand": _cmd_expand,
    "resolve": _cmd_resolve,
    "valuation": _cmd_valuation,
}


def run(job: JobSpec) -> tuple[int, dict]:
    """(exit status, report) for one job; errors become status 1 with diagnostics."""
    from .specs import parse_spec

    try:
        spec = parse_spec(job.spec, seeds=_seeds(job))
        code, body = HANDLERS[job.command](job, spec)
        report = {"command": job.command, "header": spec.header(), "result": body}
    except (AlgSeriesError, ValueError, ArithmeticError, OSError) as exc:
        return EXIT_ERROR, {"command": job.command, "error": type(exc).__name__, "message": str(exc)}
    report["budgets"] = {"trunc": job.trunc, "steps": job.steps, "twists": job.twists,
                         "value_budget": job.value_budget}
    return code, _plain(report)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    lines = []
    _text(report, "", lines)
    return "\n".join(lines)


def _text(obj, indent, lines):
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                _text(v, indent + "  ", lines)
            else:
                lines.append(f"{indent}{k}: {json.dumps(v) if not isinstance(v, str) else v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{indent}-")
                _text(v, indent + "  ", lines)
            else:
                lines.append(f"{indent}- {v}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="algseries", description="Algebraicity of power series over fields of positive characteristic.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="spec file path or JSON literal")
    common.add_argument("--trunc", type=int, default=40, help="truncation length")
    common.add_argument("--steps", type=int, default=6, help="coefficients inspected (i_max)")
    common.add_argument("--twists", type=int, default=3, help="Frobenius twists tried (r_max)")
    common.add_argument("--value-budget", type=int, default=1024, help="largest value computed")
    common.add_argument("--format", choices=("text", "json"), default="json")
    common.add_argument("--seed-roots", help="JSON file with user-supplied roots for the root oracle")
    sub = ap.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="decide algebraicity")
    c.add_argument("--probe-bound", type=int, default=2, help="fiber probes for several variables")
    a = sub.add_parser("annpoly", parents=[common], help="reconstruct an annihilating polynomial")
    a.add_argument("--degree", type=int, default=None, help="bound on the y-degree")
    a.add_argument("--xdegree", type=int, default=None, help="bound on the x-degree")
    for name, text in (("expand", "expand a branch of a plane curve"), ("resolve", "blowup chain of a branch")):
        e = sub.add_parser(name, parents=[common], help=text)
        e.add_argument("--terms", type=int, default=15, help="coefficients to report")
    v = sub.add_parser("valuation", help="valuations from arcs and residue schedules")
    vs = v.add_subparsers(dest="sub", required=True)
    vs.add_parser("build", parents=[common])
    vv = vs.add_parser("value", parents=[common])
    vv.add_argument("expr", help="polynomial in u and v")
    vs.add_parser("classify", parents=[common])
    vw = vs.add_parser("witness", parents=[common])
    vw.add_argument("--budget", type=int, default=20, help="value the witness must pass")
    vc = vs.add_parser("corollary", parents=[common])
    vc.add_argument("--schedule", help="JSON file with a residue schedule")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    extra = {}
    for key in ("probe_bound", "degree", "xdegree", "terms", "sub", "expr", "budget"):
        if getattr(args, key, None) is not None:
            extra[key] = getattr(args, key)
    if getattr(args, "schedule", None):
        extra["schedule_file"] = args.schedule
    try:
        job = JobSpec(args.command, args.spec, args.trunc, args.steps, args.twists,
                      args.value_budget, args.format, args.seed_roots, extra)
    except ValueError as exc:
        print(json.dumps({"error": "ValidationError", "message": str(exc)}, sort_keys=True))
        return EXIT_ERROR
    code, report = run(job)
    print(render(report, job.fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
