"""Quadratic transforms of plane curve germs and branch expansion.

A branch y = s(x) of g(x, y) = 0 through the origin is unfolded by the
chart substitution y = x (y' + a): the strict transform g' is
g(x, x (y' + a)) / x^b, and a is a root of the residue equation
g'(0, Y) = 0.  Iterating gives s = a1 x + a2 x^2 + ..., one coefficient
per transform.  In inseparable mode the frames also carry the
Frobenius-twisted residue fields k(a1, a2^(p^L1), ...), whose step
degrees are powers of p.
"""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BudgetTooSmall,
    IrreducibilityUnverified,
    LambdaNotMinimal,
    NoPowerSeriesBranch,
    NotPurelyInseparable,
    NotSeparable,
    OracleStuck,
    ReducibleWitness,
)
from .fields.irreducible import _is_finite, exact_root
from .fields.subfield import prefix_or_generated
from .fields.tower import SEPARABLE, FieldElement, Tower
from .series import INF, BivarPolynomial, ExponentBound, PuiseuxSeries, Rule, TermCount, _join, substitute_poly

SEPARABLE_MODE = "separable"
INSEPARABLE_MODE = "inseparable"
PRECISION_CAP = 4096


# -- truncated bivariate polynomials ------------------------------------------------

class BivarTrunc:
    """A polynomial in y whose coefficients are power series in x known below x^prec.

    ``terms`` maps (i, j) to the coefficient of x^i y^j; ``prec`` is INF for
    an exact polynomial.
    """

    def __init__(self, tower: Tower, terms: dict, prec=INF):
        self.tower = tower
        self.prec = prec
        self.terms = {}
        for (i, j), c in terms.items():
            if c and i < prec:
                if int(i) != i or int(j) != j:
                    raise ValueError("exponents must be natural numbers")
                self.terms[(int(i), int(j))] = tower.coerce(c)

    @classmethod
    def from_poly(cls, g, prec: int = 32) -> "BivarTrunc":
        if isinstance(g, BivarTrunc):
            return g
        T = g.tower
        exact = g.is_finite()
        terms = {}
        for j, a in g.coeffs.items():
            items = a.rule.terms if exact else a.truncate(ExponentBound(prec)).terms
            for e, c in items:
                if e.denominator != 1 or e < 0:
                    raise ValueError("coefficients must be power series in x with integer exponents")
                terms[(int(e), j)] = c
            T = _join(T, a.tower)
        return cls(T, terms, INF if exact else prec)

    def __eq__(self, other):
        if not isinstance(other, BivarTrunc):
            return NotImplemented
        return self.prec == other.prec and self.terms == other.terms

    __hash__ = None

    def lift(self, T: Tower) -> "BivarTrunc":
        if T is self.tower:
            return self
        return BivarTrunc(T, self.terms, self.prec)

    def __bool__(self):
        return bool(self.terms)

    @property
    def ydeg(self) -> int:
        return max((j for _, j in self.terms), default=0)

    def order(self) -> int:
        """Total degree of the initial form; BudgetTooSmall when unknowable."""
        b = min((i + j for i, j in self.terms), default=None)
        if b is None or b >= self.prec:
            raise BudgetTooSmall(f"order not determined below x^{self.prec}")
        return b

    def x_adic_order(self) -> int:
        b = min((i for i, _ in self.terms), default=None)
        if b is None or b >= self.prec:
            raise BudgetTooSmall(f"x-divisibility not certified below x^{self.prec}")
        return b

    def divide_x(self, b: int) -> "BivarTrunc":
        prec = self.prec - b if self.prec != INF else INF
        return BivarTrunc(self.tower, {(i - b, j): c for (i, j), c in self.terms.items()}, prec)

    def translate(self, alpha) -> "BivarTrunc":
        """g(x, y + alpha)."""
        T = _join(self.tower, alpha.tower) if isinstance(alpha, FieldElement) else self.tower
        alpha = T.coerce(alpha)
        if not alpha:
            return self.lift(T)
        out: dict = {}
        powers = [T.one()]
        for _ in range(self.ydeg):
            powers.append(powers[-1] * alpha)
        for (i, j), c in self.terms.items():
            c = T.coerce(c)
            for l in range(j + 1):
                v = c * math.comb(j, l) * powers[j - l]
                key = (i, l)
                out[key] = out[key] + v if key in out else v
        return BivarTrunc(T, out, self.prec)

    def chart(self):
        """(b, g(x, x y) / x^b) with b the order of g."""
        b = self.order()
        prec = self.prec - b if self.prec != INF else INF
        return b, BivarTrunc(self.tower, {(i + j - b, j): c for (i, j), c in self.terms.items()}, prec)

    def chart_y(self):
        """(b, g(x y, y) / y^b): the other chart, for exact polynomials only."""
        if self.prec != INF:
            raise BudgetTooSmall("the y-chart needs an exact polynomial")
        b = self.order()
        return b, BivarTrunc(self.tower, {(i, i + j - b): c for (i, j), c in self.terms.items()})

    def residue_poly(self) -> list:
        """Coefficients of g(0, Y), lowest degree first."""
        if self.prec < 1:
            raise BudgetTooSmall("no precision left for the residue equation")
        d = self.ydeg
        T = self.tower
        out = [T.zero()] * (d + 1)
        for (i, j), c in self.terms.items():
            if i == 0:
                out[j] = c
        while len(out) > 1 and not out[-1]:
            out.pop()
        return out

    def is_unit(self) -> bool:
        return self.prec >= 1 and (0, 0) in self.terms

    def y_divisible(self) -> bool:
        """True when y divides g exactly (only decidable for exact polynomials)."""
        return self.prec == INF and all(j >= 1 for _, j in self.terms)

    def linear_part(self):
        """(coefficient of x, coefficient of y)."""
        T = self.tower
        return self.terms.get((1, 0), T.zero()), self.terms.get((0, 1), T.zero())

    def compress(self, q: int):
        """G with G(x^q, y^q) = g, or None if g is not of that shape."""
        if q == 1:
            return self
        if any(i % q or j % q for i, j in self.terms):
            return None
        prec = INF if self.prec == INF else -(-self.prec // q)
        return BivarTrunc(self.tower, {(i // q, j // q): c for (i, j), c in self.terms.items()}, prec)

    def to_poly(self) -> BivarPolynomial:
        if not self.terms:
            return None
        return BivarPolynomial.from_terms(self.tower, {(Fraction(i), j): c for (i, j), c in self.terms.items()})

    def fmt(self) -> str:
        if not self.terms:
            return "0"
        poly = self.to_poly()
        s = poly.fmt()
        return s if self.prec == INF else f"{s} + O(x^{self.prec})"

    def __repr__(self):
        return f"BivarTrunc({self.fmt()})"


# -- root oracle -----------------------------------------------------------------------

def _evaluate(coeffs, z):
    acc = z.tower.zero()
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def finite_field_elements(T: Tower, limit: int = 729):
    """All elements of a finite-field tower of size at most ``limit``, else None."""
    if not _is_finite(T) or T.base.families or T.base.generators:
        return None
    p = T.char
    size = p ** T.degree
    if size > limit:
        return None
    monos = T.monomials(0)
    out = []
    for vals in itertools.product(range(p), repeat=len(monos)):
        out.append(T.from_coords({m: v for m, v in zip(monos, vals) if v}, 0))
    return out


class RootOracle:
    """Roots of residue equations, in a deterministic order.

    Roots already in the tower are found first (zero, seeds, linear,
    radical, quadratic, Artin-Schreier and exhaustive search over small
    finite fields, factoring over a prime field).  Only if none exist is the
    tower extended, by a radical, a quadratic or Artin-Schreier root, or a
    root of an irreducible factor.
    """

    STRATEGIES = ("linear", "radical", "quadratic", "artin-schreier", "exhaustive", "factor", "seeds")

    def __init__(self, strategies=None, seeds=(), adjoin: bool = True, exhaustive_limit: int = 729):
        self.strategies = tuple(strategies or self.STRATEGIES)
        self.seeds = list(seeds)
        self.adjoin = adjoin
        self.exhaustive_limit = exhaustive_limit

    def roots(self, T: Tower, coeffs):
        """(tower, ordered list of roots) for the polynomial sum coeffs[j] Y^j."""
        coeffs = [T.coerce(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if len(coeffs) < 2:
            return T, []
        seeded = self._seed_roots(T, coeffs)
        if seeded:
            T = seeded[0].tower
            coeffs = [T.coerce(c) for c in coeffs]
        found = self._roots_in(T, coeffs)
        if found:
            # seeds choose the branch, so they come first
            return T, [T.coerce(z) for z in seeded] + [z for z in found if z not in seeded]
        if not self.adjoin:
            return T, []
        return self._extend(T, coeffs)

    def _seed_roots(self, T, coeffs):
        """Seeds that are roots, possibly in a tower extending T (the first one's)."""
        if "seeds" not in self.strategies:
            return []
        out = []
        for s in self.seeds:
            try:
                z = T.parse(s) if isinstance(s, str) else s
            except Exception:
                continue
            if out:
                U = out[0].tower
            else:
                U = z.tower if T.is_prefix_of(z.tower) else T
            try:
                z = U.coerce(z)
            except ValueError:
                continue
            if z not in out and not _evaluate([U.coerce(c) for c in coeffs], z):
                out.append(z)
        return out

    # roots in T
    def _roots_in(self, T, coeffs):
        cands = []
        if not coeffs[0]:
            cands.append(T.zero())
        d = len(coeffs) - 1
        nz = [j for j, c in enumerate(coeffs) if c]
        if "linear" in self.strategies and d == 1:
            cands.append(-coeffs[0] / coeffs[1])
        if "radical" in self.strategies and len(nz) == 2:
            lo, hi = nz
            c = -coeffs[lo] / coeffs[hi]
            r = exact_root(T, c, hi - lo)
            if r is not None:
                cands += [r * z for z in _unity(T, hi - lo)]
        if "quadratic" in self.strategies and d == 2 and T.char != 2:
            disc = coeffs[1] * coeffs[1] - coeffs[0] * coeffs[2] * 4
            s = exact_root(T, disc, 2)
            if s is not None:
                two_a = coeffs[2] * 2
                cands += [(-coeffs[1] + s) / two_a, (-coeffs[1] - s) / two_a]
        if "exhaustive" in self.strategies:
            elems = finite_field_elements(T, self.exhaustive_limit)
            if elems is not None:
                cands += elems
        if "factor" in self.strategies and T.depth == 0:
            cands += _prime_field_roots(T, coeffs)
        out = []
        for z in cands:
            if z not in out and not _evaluate(coeffs, z):
                out.append(z)
        return sorted(out, key=_root_key)

    def _extend(self, T, coeffs):
        d = len(coeffs) - 1
        lead = coeffs[-1]
        monic = [c / lead for c in coeffs]
        nz = [j for j, c in enumerate(monic) if c]
        p = T.char
        try:
            if "radical" in self.strategies and len(nz) == 2 and nz[0] == 0:
                T2, r = T.radical(-monic[0], d)
                return T2, [x for x in [r * z for z in _unity(T2, d)]]
            if "quadratic" in self.strategies and d == 2 and p != 2:
                disc = monic[1] * monic[1] - monic[0] * 4
                T2, s = T.radical(disc, 2)
                b = T2.coerce(monic[1])
                return T2, [(-b + s) / 2, (-b - s) / 2]
            if "artin-schreier" in self.strategies and p and d == p and nz == [0, 1, p] and monic[1] == -T.one():
                T2 = T.adjoin(monic, SEPARABLE)
                g = T2.gen(T2.steps[-1].gen)
                return T2, [g + k for k in range(p)]
            if "factor" in self.strategies and T.depth == 0:
                factor = _lowest_irreducible_factor(T, monic)
                if factor is not None:
                    T2 = T.adjoin(factor, SEPARABLE, certificate="proved")
                    g = T2.gen(T2.steps[-1].gen)
                    return T2, [g]
            if d <= 4 or _is_finite(T, monic):
                T2 = T.adjoin(monic, SEPARABLE)
                g = T2.gen(T2.steps[-1].gen)
                return T2, [g]
        except (ReducibleWitness, IrreducibilityUnverified, NotSeparable) as exc:
            raise OracleStuck(f"could not extend by a root: {exc}") from exc
        raise OracleStuck("no strategy applies to this residue equation; supply seeds")


def _root_key(z):
    return (z.tower.depth and not z.in_prefix(0), z.sort_key())


def _unity(T, m):
    """m-th roots of unity found in T (always including 1), in a fixed order."""
    one = T.one()
    out = [one]
    if m == 1:
        return out
    if m % 2 == 0 and T.char != 2:
        out.append(-one)
    if T.char and _is_finite(T):
        elems = finite_field_elements(T)
        if elems is not None:
            out += [z for z in elems if z and z ** m == one and z not in out]
    return out


def _prime_field_roots(T, coeffs):
    if T.base.families or T.base.generators:
        return []
    import sympy

    Y = sympy.Symbol("Y")
    p = T.char
    vals = [c.raw.const_value() if c.raw.is_const() else None for c in coeffs]
    if any(v is None for v in vals):
        return []
    expr = sum(sympy.Rational(v) * Y**j for j, v in enumerate(vals))
    opts = {"modulus": p} if p else {"domain": "QQ"}
    poly = sympy.Poly(expr, Y, **opts)
    roots = []
    for f, _ in poly.factor_list()[1]:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            r = sympy.Rational(-int(b) if p else -b) / (int(a) if p else a)
            roots.append(T.const(Fraction(int(r.p), int(r.q)) if not p else Fraction(int(r.p) * pow(int(r.q), -1, p) % p)))
    return roots


def _lowest_irreducible_factor(T, monic):
    if T.base.families or T.base.generators:
        return None
    import sympy

    Y = sympy.Symbol("Y")
    p = T.char
    vals = [c.raw.const_value() if c.raw.is_const() else None for c in monic]
    if any(v is None for v in vals):
        return None
    expr = sum(sympy.Rational(v) * Y**j for j, v in enumerate(vals))
    opts = {"modulus": p} if p else {"domain": "QQ"}
    facs = sorted((f for f, _ in sympy.Poly(expr, Y, **opts).factor_list()[1]), key=lambda f: f.degree())
    f = facs[0].monic()
    out = []
    for c in reversed(f.all_coeffs()):
        c = sympy.Rational(int(c) % p) if p else sympy.Rational(c)
        out.append(Fraction(int(c.p), int(c.q)))
    return out


# -- frames ---------------------------------------------------------------------------

@dataclass
class BlowupFrame:
    index: int
    mode: str
    g: BivarTrunc
    b: int
    alpha: FieldElement | None
    lam: int | None
    residue_degree: int
    step_degree: int
    twist: int  # running sum of the twist exponents; zero in separable mode
    record: tuple  # ("translate", a0) then ("chart", alpha) entries
    gens: tuple  # generators of the residue field over k
    k_depth: int = 0
    snc: bool = field(default=False)

    @property
    def tower(self) -> Tower:
        return self.g.tower

    def transform_view(self) -> BivarTrunc:
        """The strict transform in the parameter of the frame.

        In inseparable mode that parameter is (y'-power)^(p^L); the view is
        the compressed polynomial when g has the matching shape.
        """
        if self.mode == INSEPARABLE_MODE and self.twist:
            G = self.g.compress(self.g.tower.char ** self.twist)
            if G is not None:
                return G
        return self.g

    def to_json(self) -> dict:
        view = self.transform_view()
        try:
            order = view.order()
        except BudgetTooSmall:
            order = None
        return {
            "index": self.index,
            "mode": self.mode,
            "alpha": None if self.alpha is None else self.alpha.fmt(),
            "lambda": self.lam,
            "residue_degree": self.residue_degree,
            "step_degree": self.step_degree,
            "b": self.b,
            "order": order,
            "snc": self.snc,
        }


def _snc(view: BivarTrunc) -> bool:
    try:
        if view.order() != 1:
            return False
    except BudgetTooSmall:
        raise
    return bool(view.linear_part()[1])


def detect_snc(frame: BlowupFrame) -> bool:
    """x and the strict transform are regular parameters at the origin."""
    return _snc(frame.transform_view())


def initial_frame(g, mode: str = SEPARABLE_MODE, k_depth: int = 0, prec: int = 32) -> BlowupFrame:
    """Frame 0: g with its x-power removed."""
    G = BivarTrunc.from_poly(g, prec)
    if not G:
        raise ValueError("g must be nonzero")
    b = G.x_adic_order()
    G = G.divide_x(b)
    K = prefix_or_generated(G.tower, k_depth, [])
    fr = BlowupFrame(0, mode, G, b, None, None, K.degree, 1, 0, (), (), k_depth)
    fr.snc = _safe_snc(fr)
    return fr


def _safe_snc(fr):
    try:
        return detect_snc(fr)
    except BudgetTooSmall:
        return False


def strict_transform(frame: BlowupFrame, g):
    """(b, g1): g pushed through the frame's substitutions, g = x^b g1."""
    G = BivarTrunc.from_poly(g)
    b = G.x_adic_order()
    G = G.divide_x(b)
    for kind, a in frame.record:
        if kind == "chart":
            bc, G = G.chart()
            b += bc
        G = G.translate(a)
    return b, G


def transform_step(frame: BlowupFrame, alpha) -> BlowupFrame:
    """Chart y = x (y' + alpha) with alpha separable over the residue field."""
    return _step(frame, alpha, None)


def transform_step_insep(frame: BlowupFrame, lam: int, alpha) -> BlowupFrame:
    """Inseparable chart: the residue field grows by alpha^(p^L), of degree p^lam."""
    if frame.mode != INSEPARABLE_MODE:
        raise ValueError("frame is not in inseparable mode")
    return _step(frame, alpha, lam)


def _step(frame: BlowupFrame, alpha, lam) -> BlowupFrame:
    T = _join(frame.tower, alpha.tower) if isinstance(alpha, FieldElement) else frame.tower
    alpha = T.coerce(alpha)
    G = frame.g.lift(T)
    b, H = G.chart()
    H = H.translate(alpha)
    p = T.char
    k_depth = frame.k_depth
    Kprev = prefix_or_generated(T, k_depth, list(frame.gens))
    if frame.mode == SEPARABLE_MODE:
        if lam is not None and lam:
            raise ValueError("separable frames take lambda = 0")
        new_gen = alpha
        if p and not Kprev.contains(alpha) and _is_inseparable_over(alpha, Kprev):
            raise NotSeparable("alpha is inseparable over the residue field")
        lam_out = None
        twist = 0
    else:
        base = alpha.frobenius(frame.twist) if p else alpha
        minimal = _minimal_lambda(base, Kprev, _max_lambda(T))
        if minimal is None:
            raise NotPurelyInseparable("alpha has no p-power in the residue field")
        if lam is None:
            lam = minimal
        elif lam > minimal:
            raise LambdaNotMinimal(f"lambda {lam} is not minimal; {minimal} already lands in the residue field")
        elif lam < minimal:
            raise ValueError(f"lambda {lam} is too small; the least admissible value is {minimal}")
        new_gen = base
        lam_out = lam
        twist = frame.twist + lam
    gens = frame.gens + (new_gen,)
    K = prefix_or_generated(T, k_depth, list(gens))
    fr = BlowupFrame(
        frame.index + 1, frame.mode, H, frame.b + b, alpha, lam_out, K.degree,
        K.degree // Kprev.degree, twist, frame.record + (("chart", alpha),), gens, k_depth,
    )
    fr.snc = _safe_snc(fr)
    return fr


def _is_inseparable_over(alpha, K) -> bool:
    b = alpha
    for _ in range(_max_lambda(alpha.tower)):
        b = b.frobenius(1)
        if K.contains(b):
            return True
    return False


def _max_lambda(T):
    p = T.char
    if not p:
        return 0
    n, e = T.degree, 0
    while n > 1:
        n //= p
        e += 1
    return e


def _minimal_lambda(a, K, limit):
    for l in range(limit + 1):
        if K.contains(a):
            return l
        a = a.frobenius(1)
    return None


# -- chains and branches ----------------------------------------------------------------

@dataclass
class BlowupChain:
    frames: list
    mode: str

    def i0(self):
        """Least i with every later frame SNC and no residue growth after i."""
        frames = self.frames
        best = None
        for n in range(len(frames) - 1, -1, -1):
            if not frames[n].snc:
                break
            if n + 1 < len(frames) and frames[n + 1].step_degree != 1:
                break
            best = n
        return best

    def residue_degrees(self) -> list:
        return [fr.step_degree for fr in self.frames[1:]]

    def to_json(self) -> dict:
        return {"mode": self.mode, "frames": [fr.to_json() for fr in self.frames], "i0": self.i0()}


class BranchRule(Rule):
    """The coefficients of a branch, one quadratic transform per term."""

    def __init__(self, g, oracle: RootOracle, mode: str, k_depth: int = 0, prec: int = 32):
        self.g = g
        self.oracle = oracle
        self.mode = mode
        self.k_depth = k_depth
        self.prec = prec
        self.lock = threading.RLock()
        self.chain = BlowupChain([], mode)
        first = self._start(prec)
        super().__init__(first.tower)
        self.low = Fraction(0)
        self.denominator = 1
        self.sup = INF
        self.profile = ("unknown",)

    @property
    def tower(self):
        frames = self.chain.frames
        return frames[-1].tower if frames else self._tower

    def _start(self, prec):
        fr = initial_frame(self.g, self.mode, self.k_depth, prec)
        G = fr.g
        T, roots = self.oracle.roots(G.tower, G.residue_poly())
        if not roots:
            if len(G.residue_poly()) == 1:
                raise NoPowerSeriesBranch("the curve does not pass through x = 0 with a finite y")
            raise OracleStuck("no root of the residue equation g(0, Y) = 0")
        a0 = roots[0]
        G2 = G.lift(T).translate(a0) if a0 else G.lift(T)
        K = prefix_or_generated(G2.tower, self.k_depth, [a0] if a0 else [])
        fr = BlowupFrame(0, self.mode, G2, fr.b, a0, None if self.mode == SEPARABLE_MODE else 0, K.degree, 1, 0,
                         (("translate", a0),), (a0,) if a0 else (), self.k_depth)
        fr.snc = _safe_snc(fr)
        self.chain.frames = [fr]
        self._tower = fr.tower
        return fr

    def _replay(self, prec):
        """Rebuild every frame at higher precision from the recorded roots."""
        if prec > PRECISION_CAP:
            raise BudgetTooSmall(f"precision cap {PRECISION_CAP} reached")
        alphas = [fr.alpha for fr in self.chain.frames[1:]]
        self.prec = prec
        fr = initial_frame(self.g, self.mode, self.k_depth, prec)
        a0 = self.chain.frames[0].alpha
        G = fr.g.lift(_join(fr.tower, a0.tower)).translate(a0)
        first = self.chain.frames[0]
        frames = [BlowupFrame(0, self.mode, G, fr.b, a0, first.lam, first.residue_degree, 1, 0,
                              first.record, first.gens, self.k_depth)]
        frames[0].snc = _safe_snc(frames[0])
        for a, old in zip(alphas, self.chain.frames[1:]):
            frames.append(_step(frames[-1], a, old.lam))
        self.chain.frames = frames

    def advance(self):
        """Append one frame; returns its alpha, or None when the branch ends."""
        with self.lock:
            while True:
                fr = self.chain.frames[-1]
                try:
                    if fr.g.y_divisible():
                        return None
                    b, H = fr.g.chart()
                    T, roots = self.oracle.roots(H.tower, H.residue_poly())
                    break
                except BudgetTooSmall:
                    self._replay(self.prec * 2)
            if not roots:
                if len(H.residue_poly()) == 1:
                    raise NoPowerSeriesBranch(f"strict transform became a unit at step {fr.index + 1}")
                raise OracleStuck(f"no root of the residue equation at step {fr.index + 1}")
            alpha = roots[0]
            while True:
                try:
                    nxt = _step(self.chain.frames[-1], alpha, None)
                    break
                except BudgetTooSmall:
                    self._replay(self.prec * 2)
            self.chain.frames.append(nxt)
            return alpha

    def candidates(self):
        yield Fraction(0), self.chain.frames[0].alpha
        i = 1
        while True:
            with self.lock:
                if i < len(self.chain.frames):
                    a = self.chain.frames[i].alpha
                else:
                    a = self.advance()
            if a is None:
                return
            yield Fraction(i), a
            i += 1


def expand_branch(g, oracle: RootOracle | None = None, mode: str = SEPARABLE_MODE, budget: int = 12,
                  k_depth: int = 0, prec: int = 32):
    """(series, chain): a branch of g = 0 expanded through ``budget`` transforms.

    The series is lazy and keeps extending the chain on demand; it is checked to
    annihilate g through twice the construction budget.
    """
    oracle = oracle or RootOracle()
    rule = BranchRule(g, oracle, mode, k_depth, prec)
    s = PuiseuxSeries(rule)
    s.head(budget + 1)
    residue = substitute_poly(g if isinstance(g, BivarPolynomial) else g.to_poly(), s, TermCount(2 * budget + 2))
    if not residue.is_zero():
        raise BudgetTooSmall(f"branch check failed: residue {residue}")
    return s, rule.chain
