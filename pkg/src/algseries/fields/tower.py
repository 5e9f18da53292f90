"""Towers of simple algebraic extensions over a rational function field.

An element of a tower of depth ``n`` is stored as a nested tuple: the
coefficients (lowest power first, trailing zeros dropped) of a polynomial
in the top generator whose coefficients are elements of the tower of depth
``n - 1``.  At depth 0 the element is a :class:`RatFunc`.  Reduction keeps
every degree below the step degree, so equality is syntactic.
"""
from __future__ import annotations

import itertools
import re
import threading
from fractions import Fraction

from ..errors import (
    BadInseparableShape,
    DuplicateGenerator,
    NotMonic,
    NotSeparable,
)
from . import upoly
from .base import BaseField, RatFunc

SEPARABLE = "separable"
INSEPARABLE = "purely-inseparable"


# -- raw nested arithmetic --------------------------------------------------

def _trim(xs):
    n = len(xs)
    while n and not xs[n - 1]:
        n -= 1
    return tuple(xs[:n])


def r_add(steps, x, y, depth):
    if depth == 0:
        return x + y
    if not x:
        return y
    if not y:
        return x
    if len(x) < len(y):
        x, y = y, x
    out = list(x)
    for i, b in enumerate(y):
        if b:
            out[i] = r_add(steps, out[i], b, depth - 1) if out[i] else b
    return _trim(out)


def r_neg(steps, x, depth):
    if depth == 0:
        return -x
    return tuple(r_neg(steps, c, depth - 1) if c else c for c in x)


def r_sub(steps, x, y, depth):
    return r_add(steps, x, r_neg(steps, y, depth), depth)


def r_zero(F, depth):
    return RatFunc(F, {}) if depth == 0 else ()


def r_mul(steps, x, y, depth):
    if depth == 0:
        return x * y
    if not x or not y:
        return ()
    F = steps[0].F
    zero = r_zero(F, depth - 1)
    prod = [zero] * (len(x) + len(y) - 1)
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if b:
                t = r_mul(steps, a, b, depth - 1)
                prod[i + j] = r_add(steps, prod[i + j], t, depth - 1) if prod[i + j] else t
    return _reduce(steps, prod, depth)


def _reduce(steps, prod, depth):
    step = steps[depth - 1]
    d = step.degree
    m = step.minpoly
    for i in range(len(prod) - 1, d - 1, -1):
        c = prod[i]
        if not c:
            continue
        prod[i] = r_zero(step.F, depth - 1)
        for j in range(d):
            mj = m[j]
            if mj:
                t = r_mul(steps, c, mj, depth - 1)
                k = i - d + j
                prod[k] = r_sub(steps, prod[k], t, depth - 1)
    return _trim(prod[:d])


def r_lift(x, from_depth, to_depth):
    for _ in range(to_depth - from_depth):
        x = (x,) if x else ()
    return x


def r_base_part(x, depth):
    """The depth-0 value if x lies in the base field, else None."""
    for _ in range(depth):
        if not x:
            return _ZERO_MARK
        if len(x) > 1:
            return None
        x = x[0]
    return x


_ZERO_MARK = object()


def r_key(x, depth):
    if depth == 0:
        return x.sort_key()
    return (len(x), tuple(r_key(c, depth - 1) if c else () for c in reversed(x)))


def r_variables(x, depth) -> set:
    if depth == 0:
        return x.variables()
    out = set()
    for c in x:
        if c:
            out |= r_variables(c, depth - 1)
    return out


# -- steps and towers ----------------------------------------------------------

class ExtensionStep:
    """One simple extension: generator, monic minimal polynomial, kind."""

    __slots__ = ("gen", "minpoly", "kind", "degree", "certificate", "F", "_hash")

    def __init__(self, gen, minpoly, kind, certificate, F):
        self.gen = gen
        self.minpoly = tuple(minpoly)  # raw coefficients at the depth below
        self.kind = kind
        self.degree = len(minpoly) - 1
        self.certificate = certificate
        self.F = F
        self._hash = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, ExtensionStep)
            and self.gen == other.gen
            and self.kind == other.kind
            and self.minpoly == other.minpoly
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gen, self.kind, self.minpoly))
        return self._hash

    def __repr__(self):
        return f"ExtensionStep({self.gen!r}, degree={self.degree}, kind={self.kind!r})"


class Tower:
    """A finite tower ``base(a_1)(a_2)...(a_n)``; immutable."""

    def __init__(self, base: BaseField, steps=()):
        self.base = base
        self.steps = tuple(steps)
        self.F = base.F
        self.char = base.char
        self._prefixes = {}
        self._lock = threading.Lock()

    # -- structure --------------------------------------------------------
    @property
    def depth(self) -> int:
        return len(self.steps)

    @property
    def degree(self) -> int:
        return self.degree_over(0)

    def degree_over(self, depth: int = 0) -> int:
        if not 0 <= depth <= self.depth:
            raise ValueError(f"depth {depth} outside 0..{self.depth}")
        out = 1
        for s in self.steps[depth:]:
            out *= s.degree
        return out

    def __eq__(self, other):
        return isinstance(other, Tower) and self.base == other.base and self.steps == other.steps

    def __hash__(self):
        return hash((self.base, self.steps))

    def __repr__(self):
        gens = ", ".join(s.gen for s in self.steps)
        return f"Tower(char={self.char}, steps=[{gens}], degree={self.degree})"

    def is_prefix_of(self, other: "Tower") -> bool:
        return (
            self.base == other.base
            and self.depth <= other.depth
            and other.steps[: self.depth] == self.steps
        )

    def prefix(self, depth: int) -> "Tower":
        if depth == self.depth:
            return self
        with self._lock:
            t = self._prefixes.get(depth)
            if t is None:
                t = Tower(self.base, self.steps[:depth])
                self._prefixes[depth] = t
        return t

    def is_separable(self) -> bool:
        return all(s.kind == SEPARABLE for s in self.steps)

    def conditional(self) -> list:
        """Generators whose irreducibility rests on a declaration or bounded search."""
        return [s.gen for s in self.steps if s.certificate != "proved"]

    def names(self) -> set:
        return set(self.base.generators) | {s.gen for s in self.steps}

    # -- elements -----------------------------------------------------------
    def element(self, raw) -> "FieldElement":
        return FieldElement(self, raw)

    def zero(self):
        return FieldElement(self, r_zero(self.F, self.depth))

    def one(self):
        return self.from_base(self.base.one())

    def from_base(self, c: RatFunc):
        return FieldElement(self, r_lift(c, 0, self.depth))

    def const(self, c):
        if isinstance(c, FieldElement):
            return self.coerce(c)
        if isinstance(c, RatFunc):
            return self.from_base(c)
        return self.from_base(self.base.const(c))

    def coerce(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.tower is self:
                return x
            if x.tower.is_prefix_of(self):
                return FieldElement(self, r_lift(x.raw, x.tower.depth, self.depth))
            raise ValueError("element belongs to an incompatible tower")
        return self.const(x)

    def gen(self, name: str) -> "FieldElement":
        for i, s in enumerate(self.steps):
            if s.gen == name:
                one = r_lift(self.base.one(), 0, i)
                raw = (r_zero(self.F, i), one)
                return FieldElement(self, r_lift(raw, i + 1, self.depth))
        return self.from_base(self.base.gen(name))

    def step_index(self, name: str):
        for i, s in enumerate(self.steps):
            if s.gen == name:
                return i
        return None

    def gens(self) -> list:
        return [self.gen(s.gen) for s in self.steps]

    # -- flat coordinates -------------------------------------------------------
    def monomials(self, depth: int = 0):
        """Exponent tuples of the monomial basis over the prefix of given depth."""
        return list(itertools.product(*[range(s.degree) for s in self.steps[depth:]]))

    def coords(self, e: "FieldElement", depth: int = 0) -> dict:
        """Coordinates of e over the prefix tower of the given depth."""
        e = self.coerce(e)
        sub = self.prefix(depth)
        out = {}

        def walk(x, lvl, exps):
            if lvl == depth:
                if x:
                    out[tuple(reversed(exps))] = FieldElement(sub, x)
                return
            for i, c in enumerate(x):
                if c:
                    walk(c, lvl - 1, exps + [i])

        walk(e.raw, self.depth, [])
        return out

    def from_coords(self, coords: dict, depth: int = 0) -> "FieldElement":
        acc = self.zero()
        for exps, c in coords.items():
            acc = acc + self.coerce(c) * self.monomial(exps, depth)
        return acc

    def monomial(self, exps, depth: int = 0) -> "FieldElement":
        x = self.base.one()
        for lvl in range(depth):
            x = (x,)
        for i, e in enumerate(exps):
            lvl = depth + i
            x = tuple([r_zero(self.F, lvl)] * e + [x])
        return FieldElement(self, x)

    # -- extension ------------------------------------------------------------
    def adjoin(
        self,
        minpoly,
        kind: str = SEPARABLE,
        gen: str | None = None,
        declared: bool = False,
        certificate: str | None = None,
    ):
        """Return the tower extended by a root of the monic ``minpoly``.

        ``minpoly`` lists coefficients lowest degree first; entries may be
        field elements, base rational functions or rationals.  A caller that
        already knows the polynomial is minimal passes ``certificate``.
        """
        from . import irreducible

        coeffs = [self.coerce(c) for c in minpoly]
        coeffs = upoly.trim(coeffs)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have positive degree")
        if coeffs[-1] != self.one():
            raise NotMonic("minimal polynomial must be monic")
        d = len(coeffs) - 1
        if kind == INSEPARABLE:
            p = self.char
            if p == 0:
                raise BadInseparableShape("purely inseparable steps need positive characteristic")
            q = d
            while q % p == 0:
                q //= p
            if q != 1 or any(coeffs[1:-1]):
                raise BadInseparableShape("expected the shape Y^(p^e) - c")
        elif kind == SEPARABLE:
            if not upoly.derivative(coeffs):
                raise NotSeparable("minimal polynomial has zero derivative")
        else:
            raise ValueError(f"unknown step kind {kind!r}")
        if gen is None:
            gen = _default_name(self, coeffs)
        if gen in self.names() or self.base.resolve(gen) is not None:
            raise DuplicateGenerator(f"generator {gen} already in use")
        cert = certificate or irreducible.certify(self, coeffs, kind, declared)
        step = ExtensionStep(gen, [c.raw for c in coeffs], kind, cert, self.F)
        return Tower(self.base, self.steps + (step,))

    def find_radical(self, c, q: int):
        """The generator of an existing step Y^q - c, if any."""
        c = self.coerce(c)
        for i, s in enumerate(self.steps):
            if s.degree != q or any(s.minpoly[1:-1]):
                continue
            if FieldElement(self.prefix(i), r_neg(self.steps, s.minpoly[0], i)) == c:
                return self.gen(s.gen)
        return None

    def radical(self, c, q: int, gen: str | None = None, declared: bool = False):
        """(tower, root) with root^q = c, reusing or adjoining a step.

        A root already present in the tower is returned without a new step.
        """
        from . import irreducible

        c = self.coerce(c)
        if q == 1:
            return self, c
        found = self.find_radical(c, q)
        if found is not None:
            return self, found
        root = irreducible.exact_root(self, c, q)
        if root is not None:
            return self, root
        p = self.char
        kind = INSEPARABLE if p and _is_p_power(q, p) else SEPARABLE
        coeffs = [-c] + [self.zero()] * (q - 1) + [self.one()]
        t = self.adjoin(coeffs, kind, gen=gen, declared=declared)
        return t, t.gen(t.steps[-1].gen)

    def parse(self, text: str):
        from .parse import parse_element

        return parse_element(self, text)

    def describe(self) -> dict:
        return {
            "char": self.char,
            "families": list(self.base.families),
            "generators": list(self.base.generators),
            "steps": [
                {
                    "gen": s.gen,
                    "kind": s.kind,
                    "degree": s.degree,
                    "minpoly": [FieldElement(self.prefix(i), c).fmt() if c else "0" for c in s.minpoly],
                    "certificate": s.certificate,
                }
                for i, s in enumerate(self.steps)
            ],
            "degree": self.degree,
        }


def _is_p_power(q, p):
    while q % p == 0:
        q //= p
    return q == 1


def _default_name(tower, coeffs):
    d = len(coeffs) - 1
    if not any(coeffs[1:-1]):
        c = -coeffs[0]
        s = c.fmt()
        if not c.is_atom():
            s = f"({s})"
        name = f"{s}^(1/{d})"
    else:
        name = f"a{tower.depth + 1}"
    if name in tower.names():
        name = f"a{tower.depth + 1}"
    return name


def make_field(char: int = 0, families=(), generators=()) -> Tower:
    """The tower with no algebraic steps over F(families, generators)."""
    return Tower(BaseField(char, families, generators))


# -- elements -----------------------------------------------------------------

class FieldElement:
    """An element of a :class:`Tower` in canonical nested form."""

    __slots__ = ("tower", "raw", "_hash")

    def __init__(self, tower: Tower, raw):
        self.tower = tower
        self.raw = raw
        self._hash = None

    def _pair(self, other):
        if isinstance(other, FieldElement):
            if other.tower is self.tower:
                return self.tower, self.raw, other.raw
            if other.tower.is_prefix_of(self.tower):
                return self.tower, self.raw, r_lift(other.raw, other.tower.depth, self.tower.depth)
            if self.tower.is_prefix_of(other.tower):
                return other.tower, r_lift(self.raw, self.tower.depth, other.tower.depth), other.raw
            raise ValueError("elements of incompatible towers")
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.tower, self.raw, self.tower.const(other).raw
        return None

    def __add__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        t, a, b = pr
        return FieldElement(t, r_add(t.steps, a, b, t.depth))

    __radd__ = __add__

    def __neg__(self):
        t = self.tower
        return FieldElement(t, r_neg(t.steps, self.raw, t.depth))

    def __sub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        t, a, b = pr
        return FieldElement(t, r_sub(t.steps, a, b, t.depth))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        t, a, b = pr
        return FieldElement(t, r_mul(t.steps, a, b, t.depth))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        t = self.tower
        if not self.raw:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(t, _r_inv(t, self.raw, t.depth))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            other = self.tower.const(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        t = self.tower
        result = t.one().raw
        base = self.raw
        while n:
            if n & 1:
                result = r_mul(t.steps, result, base, t.depth)
            n >>= 1
            if n:
                base = r_mul(t.steps, base, base, t.depth)
        return FieldElement(t, result)

    def __bool__(self):
        return bool(self.raw)

    def __eq__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        _, a, b = pr
        return a == b

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.raw)
        return self._hash

    def __repr__(self):
        return f"FieldElement({self.fmt()})"

    def __str__(self):
        return self.fmt()

    # -- structure ----------------------------------------------------------
    def base_value(self):
        """The base-field value if the element lies in the base, else None."""
        x = r_base_part(self.raw, self.tower.depth)
        if x is _ZERO_MARK:
            return self.tower.base.zero()
        return x

    def in_prefix(self, depth: int) -> bool:
        x = self.raw
        for _ in range(self.tower.depth - depth):
            if len(x) > 1:
                return False
            if not x:
                return True
            x = x[0]
        return True

    def restrict(self, depth: int) -> "FieldElement":
        """The same element viewed in the prefix tower of the given depth."""
        if not self.in_prefix(depth):
            raise ValueError("element does not lie in the requested prefix")
        x = self.raw
        for _ in range(self.tower.depth - depth):
            if not x:
                return self.tower.prefix(depth).zero()
            x = x[0]
        return FieldElement(self.tower.prefix(depth), x)

    def level(self) -> int:
        """Smallest prefix depth containing the element."""
        for d in range(self.tower.depth + 1):
            if self.in_prefix(d):
                return d
        return self.tower.depth

    def variables(self) -> set:
        return r_variables(self.raw, self.tower.depth)

    def sort_key(self):
        return r_key(self.raw, self.tower.depth)

    def is_atom(self) -> bool:
        return re.fullmatch(r"[A-Za-z]\w*|\d+", self.fmt()) is not None

    # -- Frobenius -----------------------------------------------------------
    def frobenius(self, r: int = 1) -> "FieldElement":
        p = self.tower.char
        if p == 0 or r == 0:
            return self
        out = self
        for _ in range(r):
            out = out**p
        return out

    def pth_root(self):
        from .irreducible import pth_root

        return pth_root(self)

    def fmt(self) -> str:
        return _fmt(self.tower, self.raw, self.tower.depth)


def _r_inv(tower, x, depth):
    if depth == 0:
        return x.inv()
    if len(x) == 1:
        return (_r_inv(tower, x[0], depth - 1),)
    sub = tower.prefix(depth - 1)
    a = [FieldElement(sub, c) if c else sub.zero() for c in x]
    m = [FieldElement(sub, c) if c else sub.zero() for c in tower.steps[depth - 1].minpoly]
    g, s, _ = upoly.xgcd(a, m, sub.zero(), sub.one())
    if len(g) != 1:
        from ..errors import ReducibleWitness

        raise ReducibleWitness("minimal polynomial has a nontrivial factor", witness=g)
    return _trim([c.raw for c in s])


def _fmt(tower, x, depth) -> str:
    if depth == 0:
        return x.fmt()
    if not x:
        return "0"
    g = tower.steps[depth - 1].gen
    gs = f"({g})" if "^" in g else g
    parts = []
    for i, c in enumerate(x):
        if not c:
            continue
        cs = _fmt(tower, c, depth - 1)
        if i == 0:
            parts.append(cs)
            continue
        mon = g if i == 1 else f"{gs}^{i}"
        if cs == "1":
            parts.append(mon)
        elif cs == "-1":
            parts.append("-" + mon)
        else:
            if " " in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*{mon}")
    s = " + ".join(parts)
    return s.replace("+ -", "- ")
