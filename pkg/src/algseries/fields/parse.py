"""Element expressions: rationals, generator names, ``+ - * / ^`` and parentheses.

A rational exponent such as ``t1^(1/5)`` takes a root; when the root is
not already in the tower a radical step is adjoined, so the returned element
may live in a larger tower than the one passed in.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num), m.start(1)))
        elif ident is not None:
            out.append(("id", ident, m.start(2)))
        elif op is not None and not op.isspace():
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} at {m.start(3)} in {text!r}")
            out.append(("op", op, m.start(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tower, text):
        self.tower = tower
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def error(self, msg):
        pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        return ParseError(f"{msg} at position {pos} in {self.text!r}")

    def peek(self, value=None):
        if self.i >= len(self.toks):
            return None
        tok = self.toks[self.i]
        if value is not None and not (tok[0] == "op" and tok[1] == value):
            return None
        return tok

    def take(self, value):
        if not self.peek(value):
            raise self.error(f"expected {value!r}")
        self.i += 1

    def lift(self, e):
        return self.tower.coerce(e)

    def expr(self):
        acc = self.term()
        while self.peek("+") or self.peek("-"):
            op = self.toks[self.i][1]
            self.i += 1
            rhs = self.term()
            acc = self.lift(acc)
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek("*") or self.peek("/"):
            op = self.toks[self.i][1]
            self.i += 1
            rhs = self.unary()
            acc = self.lift(acc)
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs:
                    raise self.error("division by zero")
                acc = acc / rhs
        return acc

    def unary(self):
        if self.peek("-"):
            self.i += 1
            return -self.unary()
        if self.peek("+"):
            self.i += 1
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if not self.peek("^"):
            return base
        self.i += 1
        ex = self.exponent()
        if ex.denominator != 1:
            self.tower, base = self.tower.radical(self.lift(base), ex.denominator)
            ex = Fraction(ex.numerator)
        base = self.lift(base)
        if ex < 0 and not base:
            raise self.error("negative power of zero")
        return base ** int(ex)

    def exponent(self) -> Fraction:
        sign = 1
        if self.peek("-"):
            self.i += 1
            sign = -1
        tok = self.peek()
        if tok and tok[0] == "num":
            self.i += 1
            return Fraction(sign * tok[1])
        self.take("(")
        neg = 1
        if self.peek("-"):
            self.i += 1
            neg = -1
        tok = self.peek()
        if not tok or tok[0] != "num":
            raise self.error("expected an integer exponent")
        self.i += 1
        value = Fraction(tok[1])
        if self.peek("/"):
            self.i += 1
            tok = self.peek()
            if not tok or tok[0] != "num" or tok[1] == 0:
                raise self.error("expected a positive denominator")
            self.i += 1
            value /= tok[1]
        self.take(")")
        return sign * neg * value

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of expression")
        if tok[0] == "num":
            self.i += 1
            return self.tower.const(tok[1])
        if tok[0] == "id":
            self.i += 1
            name = tok[1]
            if self.tower.step_index(name) is not None:
                return self.tower.gen(name)
            if self.tower.base.resolve(name) is not None:
                return self.tower.gen(name)
            raise self.error(f"unknown generator {name!r}")
        if self.peek("("):
            self.i += 1
            e = self.expr()
            self.take(")")
            return e
        raise self.error(f"unexpected token {tok[1]!r}")


def parse_element(tower, text):
    """Parse ``text``; the result's ``.tower`` extends ``tower`` when roots were taken."""
    if isinstance(text, (int, Fraction)):
        return tower.const(text)
    p = _Parser(tower, str(text))
    e = p.expr()
    if p.i != len(p.toks):
        raise p.error("trailing input")
    return p.tower.coerce(e)


class _Poly:
    """Sparse polynomial in two named variables: {(i, j): element}, i rational."""

    def __init__(self, terms):
        self.terms = {k: v for k, v in terms.items() if v}

    def const(self):
        if not self.terms:
            return 0
        if set(self.terms) == {(0, 0)}:
            return self.terms[(0, 0)]
        return None

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return _Poly(out)

    def __neg__(self):
        return _Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                k = (a + c, b + d)
                w = u * v
                out[k] = out[k] + w if k in out else w
        return _Poly(out)


class _BivarParser(_Parser):
    def __init__(self, tower, text, names):
        super().__init__(tower, text)
        self.names = names

    def wrap(self, e):
        return _Poly({(Fraction(0), 0): self.tower.coerce(e)})

    def lift(self, e):
        if isinstance(e, _Poly):
            return _Poly({k: self.tower.coerce(v) for k, v in e.terms.items()})
        return self.wrap(e)

    def term(self):
        acc = self.unary()
        while self.peek("*") or self.peek("/"):
            op = self.toks[self.i][1]
            self.i += 1
            rhs = self.lift(self.unary())
            acc = self.lift(acc)
            if op == "*":
                acc = acc * rhs
            else:
                c = rhs.const()
                if c is None or not c:
                    raise self.error("can only divide by a nonzero constant")
                inv = self.tower.coerce(c).inv()
                acc = _Poly({k: v * inv for k, v in acc.terms.items()})
        return acc

    def unary(self):
        if self.peek("-"):
            self.i += 1
            return -self.lift(self.unary())
        if self.peek("+"):
            self.i += 1
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if not self.peek("^"):
            return base
        self.i += 1
        ex = self.exponent()
        base = self.lift(base)
        if len(base.terms) == 1 and next(iter(base.terms)) != (0, 0):
            (i, j), c = next(iter(base.terms.items()))
            if c != self.tower.one() or (j and ex.denominator != 1) or (j and ex < 0):
                raise self.error("unsupported power of a variable")
            return _Poly({(i * ex, int(j * ex)): c})
        c = base.const()
        if c is None:
            if ex.denominator != 1 or ex < 0:
                raise self.error("polynomials take nonnegative integer powers")
            acc = self.wrap(1)
            for _ in range(int(ex)):
                acc = acc * base
            return acc
        c = self.tower.coerce(c)
        if ex.denominator != 1:
            self.tower, c = self.tower.radical(c, ex.denominator)
            ex = Fraction(ex.numerator)
        if ex < 0 and not c:
            raise self.error("negative power of zero")
        return self.wrap(c ** int(ex))

    def expr(self):
        acc = self.lift(self.term())
        while self.peek("+") or self.peek("-"):
            op = self.toks[self.i][1]
            self.i += 1
            rhs = self.lift(self.term())
            acc = self.lift(acc)
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def atom(self):
        tok = self.peek()
        if tok is not None and tok[0] == "id" and tok[1] in self.names:
            self.i += 1
            one = self.tower.one()
            return _Poly({(Fraction(1), 0): one} if tok[1] == self.names[0] else {(Fraction(0), 1): one})
        if self.peek("("):
            self.i += 1
            e = self.expr()
            self.take(")")
            return e
        return super().atom()


def parse_bivar(tower, text, names=("x", "y")):
    """Parse a polynomial in two variables; returns (tower, {(i, j): coefficient})."""
    p = _BivarParser(tower, str(text), tuple(names))
    e = p.lift(p.expr())
    if p.i != len(p.toks):
        raise p.error("trailing input")
    return p.tower, {k: p.tower.coerce(v) for k, v in e.terms.items() if v}
