"""Parser for the polynomial text syntax, e.g. ``3*y^2*z - t^3 + x*y*t``.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT | VAR | '(' expr ')'

Integers are reduced modulo the ring's prime.
"""

from __future__ import annotations

import re

from .ring import Ring

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos} in {text!r}")


def _tokenize(text: str):
    tokens = []
    for m in _TOKEN.finditer(text):
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            tokens.append((ch, ch, start))
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        total = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self):
        val = self.factor()
        while self.peek()[0] == "*":
            self.take()
            val = val * self.factor()
        return val

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            kind, n, _ = self.take("int")
            base = base ** n
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return self.ring.const(val)
        if kind == "var":
            self.take()
            if val not in self.ring.names:
                raise ParseError(f"unknown variable {val!r} (allowed: {', '.join(self.ring.names)})", self.text, pos)
            return self.ring.var(val)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"expected a number, variable or '(', found {what}", self.text, pos)


def parse_poly(text: str, ring: Ring):
    parser = _Parser(text, ring)
    if parser.peek()[0] == "end":
        raise ParseError("empty polynomial", text, 0)
    result = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", text, pos)
    return result
