"""Valuations dominating k[u, v]_(u, v) attached to arcs and residue schedules.

An arc v = s(u) defines the order valuation v(f) = ord_x f(x, s(x)).
Its quadratic transform sequence is recorded as a chain of frames with
residue fields.  The rank of v increases under completion exactly when
the residue field of the valuation ring is finite over k (the valuation being
discrete of rank 1), and then a Cauchy sequence of strictly increasing value
witnesses the rank-2 extension.  A chain built from an explicit schedule of
irreducible residue equations has unbounded residue degree and no such
witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .blowup import INSEPARABLE_MODE, SEPARABLE_MODE, _step, initial_frame
from .errors import NotApplicable, ValueExceedsBudget
from .fields.parse import parse_bivar
from .fields.subfield import prefix_or_generated
from .fields.tower import SEPARABLE, Tower
from .series import INF, BivarPolynomial, ExponentBound, PuiseuxSeries, fmt_exponent

VALUE_BUDGET = 1024


@dataclass
class ResidueFrame:
    """A frame of a schedule-built chain: residue field and its step."""

    index: int
    tower: Tower
    residue_degree: int
    step_degree: int
    minpoly: str | None = None

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "residue_degree": self.residue_degree,
            "step_degree": self.step_degree,
            "minpoly": self.minpoly,
        }


@dataclass
class ValuationChain:
    base: Tower
    frames: list
    generators: list = field(default_factory=list)  # dicts: name, definition, value
    arc: PuiseuxSeries | None = None
    mode: str = SEPARABLE_MODE
    k_depth: int = 0
    annpoly: BivarPolynomial | None = None
    schedule: list | None = None  # declared degrees of a schedule-built chain
    parameters: list = field(default_factory=list)  # parameter series of each frame

    def residue_degrees(self) -> list:
        return [fr.residue_degree for fr in self.frames]

    def values(self) -> dict:
        out = {"u": 1}
        for g in self.generators:
            out[g["name"]] = g["value"]
        return out

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "frames": [fr.to_json() for fr in self.frames],
            "residue_degrees": self.residue_degrees(),
            "values": {k: _jsonable(v) for k, v in self.values().items()},
            "generators": [dict(g, value=_jsonable(g["value"])) for g in self.generators],
            "schedule": self.schedule,
        }


def _jsonable(v):
    if v == INF:
        return "inf"
    return int(v) if isinstance(v, Fraction) and v.denominator == 1 else (fmt_exponent(v) if isinstance(v, Fraction) else v)


def _order(s: PuiseuxSeries, bound: int = VALUE_BUDGET):
    """Order of s, INF if s is an exhausted zero, ValueExceedsBudget past the bound."""
    i = 0
    while True:
        t = s.candidate(i)
        if t is None:
            return INF
        e, c = t
        if e >= bound:
            raise ValueExceedsBudget(f"value exceeds {bound}", budget=bound)
        if c:
            return e
        i += 1


# -- chains from arcs ----------------------------------------------------------------

def _choose_mode(s: PuiseuxSeries, coeffs, k_depth):
    T = s.tower
    p = T.char
    if not p:
        return SEPARABLE_MODE
    K = prefix_or_generated(T, k_depth, [])
    insep = sep = False
    for a in coeffs:
        a = T.coerce(a)
        if K.contains(a):
            continue
        b, hit = a, False
        for _ in range(32):
            b = b.frobenius(1)
            if K.contains(b):
                hit = True
                break
        if hit:
            insep = True
        else:
            sep = True
    if insep and sep:
        raise NotApplicable("coefficients mix separable and inseparable elements")
    return INSEPARABLE_MODE if insep else SEPARABLE_MODE


def build_chain_from_series(arc: PuiseuxSeries, budget: int = 8, k_depth: int = 0, annpoly=None) -> ValuationChain:
    """Frames of the quadratic transforms following v = arc(u), through ``budget`` steps."""
    head = arc.truncate(ExponentBound(budget + 1)).terms
    for e, _ in head:
        if e.denominator != 1 or e < 1:
            raise ValueError("arc must be a power series of positive order with integer exponents")
    T0 = arc.tower
    alphas = [arc.coefficient(i) for i in range(1, budget + 1)]
    T = arc.tower
    mode = _choose_mode(arc, [a for a in alphas if a], k_depth)
    # g = y - arc to enough precision for ``budget`` linear charts
    g = BivarPolynomial(T, {1: PuiseuxSeries.monomial(T, 0, 1), 0: -arc})
    fr = initial_frame(g, mode, k_depth, prec=budget + 2)
    frames = [fr]
    for a in alphas:
        frames.append(_step(frames[-1], a, None))
    p = T.char
    # parameters y_j and their values
    params = [arc]
    gens = [{"name": "v", "definition": "v", "value": _order(arc)}]
    twist_prev = 0
    for j, fr in enumerate(frames[1:], start=1):
        prev = params[-1]
        if mode == SEPARABLE_MODE:
            y = prev.shift(-1) - fr.alpha
            definition = f"v{_sub(j - 1)}/u - ({fr.alpha.fmt()})"
        else:
            q = p**twist_prev
            lam = fr.lam
            top = fr.alpha.frobenius(fr.twist)
            y = prev.shift(-q)
            if lam:
                y = y.frobenius(lam)
            y = y - top
            power = f"^{p ** lam}" if lam else ""
            definition = f"(v{_sub(j - 1)}/u{_pw(q)}){power} - ({top.fmt()})"
            twist_prev = fr.twist
        params.append(y)
        gens.append({"name": f"v{j}", "definition": definition, "value": _order(y)})
    return ValuationChain(T0, frames, gens, arc, mode, k_depth, annpoly, None, params)


def _sub(j):
    return "" if j == 0 else str(j)


def _pw(q):
    return "" if q == 1 else f"^{q}"


# -- values ----------------------------------------------------------------------------

def value_of(chain: ValuationChain, f, names=("u", "v"), budget: int = VALUE_BUDGET):
    """ord_x f(x, s(x)) for a nonzero polynomial f(u, v)."""
    if chain.arc is None:
        raise NotApplicable("schedule-built chains carry no arc to evaluate on")
    if isinstance(f, str):
        T, terms = parse_bivar(chain.arc.tower, f, names)
        if not terms:
            raise ValueError("f must be nonzero")
        f = BivarPolynomial.from_terms(T, terms)
    r = f.substitute(chain.arc)
    return _order(r, budget)


# -- rank classification -------------------------------------------------------------------

@dataclass
class RankIncreases:
    degree: int
    frame_index: int
    kind = "rank-increases"

    def to_json(self) -> dict:
        return {"verdict": self.kind, "degree": self.degree, "stable_from": self.frame_index}


@dataclass
class RankDoesNotIncrease:
    degrees: list
    justification: str
    kind = "rank-does-not-increase"

    def to_json(self) -> dict:
        return {"verdict": self.kind, "degrees": self.degrees, "justification": self.justification}


@dataclass
class RankInconclusive:
    budget: int
    reason: str
    kind = "inconclusive"

    def to_json(self) -> dict:
        return {"verdict": self.kind, "budget": self.budget, "reason": self.reason}


def _stable_from(chain: ValuationChain):
    """First frame index after which residue degrees stop growing, if observed stable."""
    degs = chain.residue_degrees()
    n = len(degs)
    exhausted = chain.arc is not None and chain.generators and chain.generators[-1]["value"] == INF
    last = n - 1
    while last > 0 and degs[last - 1] == degs[-1]:
        last -= 1
    # require the stable stretch to cover the second half of the chain
    if exhausted or (n - last) * 2 >= n and n >= 2 or n == 1:
        return last
    return None


def classify_rank_increase(chain: ValuationChain):
    """Whether the rank of the valuation increases under completion."""
    degs = chain.residue_degrees()
    if chain.schedule is not None:
        increasing = all(a < b for a, b in zip(degs, degs[1:])) and len(degs) >= 2
        if all(d > 1 for d in chain.schedule) and increasing:
            return RankDoesNotIncrease(degs[1:], "declared schedule of irreducible residue equations")
        if all(d == 1 for d in chain.schedule):
            return RankIncreases(degs[-1], 0)
        return RankInconclusive(len(degs), "schedule mixes trivial and proper steps")
    i = _stable_from(chain)
    if i is not None:
        return RankIncreases(degs[-1], i)
    profile = (chain.arc.rule.profile or ("unknown",)) if chain.arc is not None else ("unknown",)
    steps = degs[1:]
    if profile[0] == "unbounded" and len(steps) >= 2 and all(a < b for a, b in zip(steps, steps[1:])):
        return RankDoesNotIncrease(steps, profile[1])
    return RankInconclusive(len(degs), "residue degrees did not stabilize within the budget")


# -- completion witness -------------------------------------------------------------------

@dataclass
class CompletionWitness:
    frame_index: int
    steps: list  # (a, n): subtract a x^n from the current parameter
    final_value: object

    @property
    def values(self) -> list:
        return [n for _, n in self.steps]

    def to_json(self) -> dict:
        return {
            "frame": self.frame_index,
            "steps": [{"alpha": a.fmt(), "n": _jsonable(n)} for a, n in self.steps],
            "final_value": _jsonable(self.final_value),
        }


def completion_witness(chain: ValuationChain, N: int) -> CompletionWitness:
    """A Cauchy sequence of parameters, each the last minus a x^n, with values rising past N.

    Runs in the frame where the residue field has stabilized, so every
    subtracted coefficient is a residue of that frame's ring.
    """
    verdict = classify_rank_increase(chain)
    if not isinstance(verdict, RankIncreases):
        raise NotApplicable("residue degrees are not finite; no rank-2 witness exists")
    i = verdict.frame_index
    y = chain.parameters[i]
    K = prefix_or_generated(y.tower, chain.k_depth, list(chain.frames[i].gens))
    steps = []
    idx = 0
    value = None
    while True:
        t = y.candidate(idx)
        if t is None:
            value = INF
            break
        e, c = t
        idx += 1
        if not c:
            continue
        if e > N:
            value = e
            break
        if not K.contains(c):
            raise NotApplicable("a leading coefficient left the stabilized residue field")
        steps.append((c, e))
    return CompletionWitness(i, steps, value)


# -- infinite residue chains ----------------------------------------------------------------

def build_infinite_residue_chain(k: Tower, schedule) -> ValuationChain:
    """Adjoin a root of each schedule polynomial to the residue field in turn.

    Each entry lists coefficients lowest degree first (elements or strings
    over the current residue field).  Irreducibility is certified by the
    tower (exactly over finite fields) and ReducibleWitness propagates.
    """
    frames = [ResidueFrame(0, k, 1, 1)]
    T = k
    degrees = []
    for n, h in enumerate(schedule, start=1):
        coeffs = [T.parse(c) if isinstance(c, str) else T.coerce(c) for c in h]
        lead = coeffs[-1]
        coeffs = [c / lead for c in coeffs]
        d = len(coeffs) - 1
        degrees.append(d)
        if d == 1:
            frames.append(ResidueFrame(n, T, T.degree, 1, _fmt_poly(coeffs)))
            continue
        T = T.adjoin(coeffs, SEPARABLE, gen=f"a{n}", declared=d > 4 and not T.char)
        frames.append(ResidueFrame(n, T, T.degree, d, _fmt_poly(coeffs)))
    return ValuationChain(k, frames, [{"name": "x", "definition": "x", "value": 1}], None,
                          SEPARABLE_MODE, 0, None, degrees, [])


def _fmt_poly(coeffs) -> str:
    parts = []
    for j in range(len(coeffs) - 1, -1, -1):
        c = coeffs[j]
        if not c:
            continue
        mono = "" if j == 0 else ("Y" if j == 1 else f"Y^{j}")
        cs = c.fmt()
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(f"{cs}*{mono}" if c.is_atom() else f"({cs})*{mono}")
    return " + ".join(parts).replace("+ -", "- ")
