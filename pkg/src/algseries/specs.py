"""JSON input specs for fields, series, polynomials and residue schedules.

Every number is an exact string or integer.  Errors name the offending
field by its dotted path, and JSON syntax errors carry line and column.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AlgSeriesError, ParseError, ValidationError
from .fields.parse import parse_bivar
from .fields.tower import INSEPARABLE, SEPARABLE, Tower, make_field
from .multivar import MultiSeries
from .series import (
    BivarPolynomial,
    Const,
    FrobeniusFamily,
    IndexedRoot,
    PrimeRadical,
    PuiseuxSeries,
)

STEP_KINDS = {"separable": SEPARABLE, "purely-inseparable": INSEPARABLE, "inseparable": INSEPARABLE}


@dataclass
class Spec:
    """A parsed input: the tower plus whichever objects the file described."""

    tower: Tower
    series: object = None  # PuiseuxSeries or MultiSeries
    poly: BivarPolynomial | None = None
    poly_terms: dict | None = None
    schedule: list | None = None
    seeds: list = field(default_factory=list)
    mode: str = "separable"
    raw: dict = field(default_factory=dict)

    def header(self) -> dict:
        """Field description with every declared (unproved) irreducibility surfaced."""
        desc = self.tower.describe()
        declared = [s["gen"] for s in desc["steps"] if s["certificate"] == "declared"]
        return {"field": desc, "declared_irreducible": declared}


# -- loading ------------------------------------------------------------------------

def load_json(source) -> tuple[dict, str | None]:
    """(object, directory for relative references) from a path, literal or dict."""
    if isinstance(source, dict):
        return source, None
    text = str(source)
    base = None
    if not text.lstrip().startswith("{"):
        if not os.path.exists(text):
            raise ParseError(f"spec file not found: {text}")
        base = os.path.dirname(os.path.abspath(text))
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ParseError("line 1: the input must be a JSON object")
    return obj, base


def _need(obj, key, path):
    if not isinstance(obj, dict) or key not in obj:
        raise ValidationError(f"{path}.{key}: missing" if path else f"{key}: missing")
    return obj[key]


def _frac(v, path) -> Fraction:
    try:
        return Fraction(str(v))
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"{path}: expected an exact rational, got {v!r}") from None


def _int(v, path, positive=False) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ValidationError(f"{path}: expected an integer, got {v!r}")
    try:
        n = int(v)
    except ValueError:
        raise ValidationError(f"{path}: expected an integer, got {v!r}") from None
    if positive and n < 1:
        raise ValidationError(f"{path}: must be positive")
    return n


def _elem(T: Tower, v, path):
    """(tower, element); the tower grows when the expression takes roots."""
    try:
        e = T.parse(str(v)) if not isinstance(v, int) else T.const(v)
    except AlgSeriesError as exc:
        raise ValidationError(f"{path}: {exc}") from None
    return (e.tower if e.tower.depth > T.depth else T), e


def parse_field(spec, base_dir=None, path="field") -> Tower:
    if isinstance(spec, str):
        ref = spec if base_dir is None else os.path.join(base_dir, spec)
        obj, sub = load_json(ref)
        return parse_field(obj.get("field", obj), sub, path)
    if not isinstance(spec, dict):
        raise ValidationError(f"{path}: expected an object")
    char = _int(spec.get("char", 0), f"{path}.char")
    try:
        T = make_field(char, spec.get("families", []), spec.get("generators", []))
    except AlgSeriesError as exc:
        raise ValidationError(f"{path}: {exc}") from None
    for n, st in enumerate(spec.get("steps", [])):
        sp = f"{path}.steps[{n}]"
        kind = STEP_KINDS.get(st.get("kind", "separable"))
        if kind is None:
            raise ValidationError(f"{sp}.kind: unknown step kind {st.get('kind')!r}")
        coeffs = []
        for m, c in enumerate(_need(st, "minpoly", sp)):
            T, e = _elem(T, c, f"{sp}.minpoly[{m}]")
            coeffs.append(e)
        try:
            T = T.adjoin(coeffs, kind, gen=st.get("gen"), declared=bool(st.get("declared", False)))
        except AlgSeriesError as exc:
            raise ValidationError(f"{sp}: {type(exc).__name__}: {exc}") from None
    return T


def _coefficient_form(spec, T, path):
    form = _need(spec, "form", path)
    if form == "const":
        T, c = _elem(T, spec.get("value", "1"), f"{path}.value")
        return T, Const(c)
    if form == "indexed-root":
        fam = _need(spec, "family", path)
        if fam not in T.base.families:
            raise ValidationError(f"{path}.family: {fam!r} is not a family of the field")
        return T, IndexedRoot(fam, _int(spec.get("root_e", 0), f"{path}.root_e"))
    if form == "frobenius-family":
        T, b = _elem(T, _need(spec, "base", path), f"{path}.base")
        return T, FrobeniusFamily(b, _int(spec.get("e", 1), f"{path}.e"))
    if form == "prime-radical":
        return T, PrimeRadical(_int(spec.get("m", 2), f"{path}.m", positive=True))
    raise ValidationError(f"{path}.form: unknown coefficient form {form!r}")


def parse_series_rule(spec, T: Tower, path="rule", seeds=()):
    """(tower, PuiseuxSeries) from a univariate rule object."""
    kind = _need(spec, "kind", path)
    if kind == "template":
        ex = _need(spec, "exponent", path)
        form = _need(ex, "form", f"{path}.exponent")
        if form == "affine":
            exponent = ("affine", _frac(ex.get("a", 0), f"{path}.exponent.a"), _frac(ex.get("b", 1), f"{path}.exponent.b"))
        elif form == "one-minus-p-pow":
            exponent = ("one-minus-p-pow",)
        else:
            raise ValidationError(f"{path}.exponent.form: unknown exponent form {form!r}")
        T, coeff = _coefficient_form(_need(spec, "coefficient", path), T, f"{path}.coefficient")
        start = _int(spec.get("start", 1), f"{path}.start")
        stop = spec.get("stop")
        stop = None if stop is None else _int(stop, f"{path}.stop")
        try:
            return T, PuiseuxSeries.template(T, exponent, coeff, start, stop)
        except ValueError as exc:
            raise ValidationError(f"{path}: {exc}") from None
    if kind == "explicit":
        terms = []
        for n, t in enumerate(_need(spec, "terms", path)):
            if not isinstance(t, list) or len(t) != 2:
                raise ValidationError(f"{path}.terms[{n}]: expected [exponent, coefficient]")
            T, c = _elem(T, t[1], f"{path}.terms[{n}][1]")
            terms.append((_frac(t[0], f"{path}.terms[{n}][0]"), c))
        return T, PuiseuxSeries.finite(T, [(e, T.coerce(c)) for e, c in terms])
    if kind == "geometric":
        T, c = _elem(T, spec.get("coeff", "1"), f"{path}.coeff")
        step = _frac(spec.get("step", 1), f"{path}.step")
        return T, PuiseuxSeries.geometric(T, step, _int(spec.get("start", 0), f"{path}.start"), c)
    if kind in ("sum", "product"):
        parts = []
        for n, sub in enumerate(_need(spec, "terms", path)):
            T, s = parse_series_rule(sub, T, f"{path}.terms[{n}]", seeds)
            parts.append(s)
        if not parts:
            raise ValidationError(f"{path}.terms: empty")
        out = parts[0]
        for s in parts[1:]:
            out = out + s if kind == "sum" else out * s
        return T, out
    if kind == "branch":
        from .blowup import RootOracle, expand_branch

        T, poly, _ = parse_poly(_need(spec, "poly", path), T, f"{path}.poly")
        oracle = RootOracle(seeds=list(seeds) + _seed_list(spec.get("seed", []), T, f"{path}.seed"))
        try:
            s, _chain = expand_branch(poly, oracle, spec.get("mode", "separable"),
                                      _int(spec.get("budget", 12), f"{path}.budget", positive=True))
        except AlgSeriesError as exc:
            raise ValidationError(f"{path}: {type(exc).__name__}: {exc}") from None
        return s.tower, s
    raise ValidationError(f"{path}.kind: unknown series rule {kind!r}")


def _seed_list(values, T, path):
    out = []
    for n, v in enumerate(values):
        T, e = _elem(T, v, f"{path}[{n}]")
        out.append(e)
    return out


def parse_multi_rule(spec, T: Tower, names, path="rule"):
    n = len(names)
    kind = _need(spec, "kind", path)
    if kind == "explicit-multi":
        terms = {}
        for m, t in enumerate(_need(spec, "terms", path)):
            if not isinstance(t, list) or len(t) != 2 or not isinstance(t[0], list) or len(t[0]) != n:
                raise ValidationError(f"{path}.terms[{m}]: expected [[{n} exponents], coefficient]")
            T, c = _elem(T, t[1], f"{path}.terms[{m}][1]")
            terms[tuple(_int(a, f"{path}.terms[{m}][0]") for a in t[0])] = c
        return T, MultiSeries.explicit(n, T, {I: T.coerce(c) for I, c in terms.items()}, names)
    if kind == "univariate-in-var":
        var = _need(spec, "var", path)
        if var not in names:
            raise ValidationError(f"{path}.var: {var!r} is not one of {list(names)}")
        T, s = parse_series_rule(_need(spec, "series", path), T, f"{path}.series")
        return s.tower, MultiSeries.univariate(n, s, names.index(var), names)
    if kind == "monomial-subst":
        T, s = parse_series_rule(_need(spec, "series", path), T, f"{path}.series")
        v = [_int(a, f"{path}.vector") for a in _need(spec, "vector", path)]
        if len(v) != n:
            raise ValidationError(f"{path}.vector: expected {n} entries")
        return s.tower, MultiSeries.monomial_subst(s, v, names)
    if kind == "binomial":
        weights = []
        for m, w in enumerate(spec.get("weights", ["1"] * n)):
            T, e = _elem(T, w, f"{path}.weights[{m}]")
            weights.append(e)
        return T, MultiSeries.binomial(n, T, [T.coerce(w) for w in weights], names)
    if kind in ("sum", "product"):
        parts = []
        for m, sub in enumerate(_need(spec, "terms", path)):
            T, s = parse_multi_rule(sub, T, names, f"{path}.terms[{m}]")
            parts.append(s)
        if not parts:
            raise ValidationError(f"{path}.terms: empty")
        out = parts[0]
        for s in parts[1:]:
            out = out + s if kind == "sum" else out * s
        return T, out
    raise ValidationError(f"{path}.kind: unknown multivariate rule {kind!r}")


def parse_poly(text, T: Tower, path="poly", names=("x", "y")):
    """(tower, BivarPolynomial, terms) from a polynomial string."""
    if not isinstance(text, str):
        raise ValidationError(f"{path}: expected a polynomial string")
    try:
        T, terms = parse_bivar(T, text, names)
    except AlgSeriesError as exc:
        raise ValidationError(f"{path}: {exc}") from None
    if not terms:
        raise ValidationError(f"{path}: the zero polynomial")
    return T, BivarPolynomial.from_terms(T, terms), terms


def parse_spec(source, seeds=()) -> Spec:
    """Validate a spec file, JSON literal or dict into in-memory objects."""
    obj, base = load_json(source)
    T = parse_field(obj.get("field", {}), base)
    spec = Spec(T, raw=obj, mode=obj.get("mode", "separable"))
    if spec.mode not in ("separable", "inseparable"):
        raise ValidationError(f"mode: unknown mode {spec.mode!r}")
    spec.seeds = _seed_list(list(seeds) + list(obj.get("seeds", [])), T, "seeds")
    if "vars" in obj:
        names = tuple(obj["vars"])
        if not names or len(set(names)) != len(names):
            raise ValidationError("vars: need distinct variable names")
        T, spec.series = parse_multi_rule(_need(obj, "rule", ""), T, names)
    elif "rule" in obj or "series" in obj:
        T, spec.series = parse_series_rule(obj.get("rule") or obj.get("series"), T, "rule", spec.seeds)
    if "poly" in obj:
        T, spec.poly, spec.poly_terms = parse_poly(obj["poly"], T, "poly", tuple(obj.get("poly_vars", ("x", "y"))))
    if "schedule" in obj:
        sched = obj["schedule"]
        if not isinstance(sched, list) or not all(isinstance(h, list) and len(h) >= 2 for h in sched):
            raise ValidationError("schedule: expected a list of coefficient lists")
        spec.schedule = [[str(c) for c in h] for h in sched]
    spec.tower = _deepest(T, spec)
    return spec


def _deepest(T, spec):
    for obj in (spec.series, spec.poly):
        if obj is not None and obj.tower.depth > T.depth:
            T = obj.tower
    return T
