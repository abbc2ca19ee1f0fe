"""Canonical text form of polynomials and rational functions, and a parser for it.

Format: terms in descending lexicographic order, ``c*x^2*y`` with rational
coefficients written ``p/q``; a non-polynomial value prints as ``(num)/(den)``.
The parser accepts general arithmetic expressions in + - * / ^ and parentheses.
"""

import re
from fractions import Fraction

from .polynomial import Polynomial
from .rational import RationalFunction
from .variables import Variable

_ALIASES = {"θ": "theta", "ε": "eps", "ħ": "hbar"}


def _format_coeff(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_mono(mono):
    return "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in mono)


def format_polynomial(p):
    if p.is_zero():
        return "0"
    pieces = []
    for mono, c in p.sorted_terms():
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = _format_mono(mono)
        else:
            body = f"{_format_coeff(a)}*{_format_mono(mono)}"
        if not pieces:
            pieces.append(("-" + body) if neg else body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


def format_rational(f):
    if f.is_polynomial():
        return format_polynomial(f.numerator)
    return f"({format_polynomial(f.numerator)})/({format_polynomial(f.denominator)})"


def to_text(x):
    if isinstance(x, RationalFunction):
        return format_rational(x)
    if isinstance(x, Polynomial):
        return format_polynomial(x)
    if isinstance(x, Fraction):
        return _format_coeff(x)
    return str(x)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_θεħ][A-Za-z0-9_']*)|(.))")


class ParseError(ValueError):
    pass


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", _ALIASES.get(name, name)))
        elif op.strip():
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}")
            out.append(("op", op))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r}, got {tok[1]!r}")

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, k = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            base = base ** (sign * k)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return RationalFunction(val)
        if kind == "name":
            return RationalFunction(Polynomial.var(Variable(val)))
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse(text):
    """Parse an arithmetic expression into a canonical RationalFunction."""
    p = _Parser(text)
    value = p.expr()
    if p.peek()[0] != "end":
        raise ParseError(f"trailing input at token {p.peek()[1]!r}")
    return value


def parse_polynomial(text):
    f = parse(text)
    if not f.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial")
    return f.numerator
