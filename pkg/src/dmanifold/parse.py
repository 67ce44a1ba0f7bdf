"""Recursive-descent parser for polynomial text.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := ['+' | '-'] factor ('*' factor)*
    factor := base ('^' uint)?
    base   := rational | ident | '(' expr ')'

Rationals are integers or ``p/q``. Identifiers must be declared variable names.
A leading sign on a term is accepted so that ``-x^2`` parses.
"""

import re

import gmpy2

from .errors import ParseError
from .poly import Poly

__all__ = ["parse_poly", "parse_polys", "tokenize"]

_TOKEN = re.compile(r"\s*(?:(?P<rat>\d+(?:\s*/\s*\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9']*)|(?P<op>[-+*^()]))")


def tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind).replace(" ", ""), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, names):
        self.text = text
        self.names = {name: i for i, name in enumerate(names)}
        if len(self.names) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.n = len(names)
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", self.text, pos)

    def parse(self):
        result = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", self.text, pos)
        return result

    def expr(self):
        result = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        sign = 1
        while self.peek()[1] in ("+", "-"):
            if self.take()[1] == "-":
                sign = -sign
        result = self.factor()
        while self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result if sign > 0 else -result

    def factor(self):
        base = self.base()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "rat" or "/" in val:
                raise ParseError("exponent must be a nonnegative integer", self.text, pos)
            return base ** int(val)
        return base

    def base(self):
        kind, val, pos = self.take()
        if kind == "rat":
            num, _, den = val.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", self.text, pos)
            return Poly.const(gmpy2.mpq(int(num), int(den) if den else 1), self.n)
        if kind == "ident":
            if val not in self.names:
                raise ParseError(f"undeclared variable {val!r}", self.text, pos)
            return Poly.var(self.names[val], self.n)
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", self.text, pos)


def parse_poly(text, names):
    """Parse ``text`` as a polynomial in the declared variables ``names``.

    >>> parse_poly("x^2 - 1/2*x*y", ["x", "y"]).to_string(["x", "y"])
    'x^2 - 1/2*x*y'
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    return _Parser(text, list(names)).parse()


def parse_polys(texts, names):
    return [parse_poly(t, names) for t in texts]
