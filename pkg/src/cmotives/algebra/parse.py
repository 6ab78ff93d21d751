"""Recursive-descent parser for element strings.

Grammar (whitespace ignored)::

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := "-" unary | power
    power := atom ("^" ["-"] INT)?
    atom  := INT | NAME | "(" expr ")"

Integers are coerced through the supplied `const` map (so they are reduced
mod p); names are looked up in the supplied symbol table.
"""
from __future__ import annotations

import re

from ..errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(s: str):
    toks = []
    for m in _TOKEN.finditer(s):
        num, name, op = m.groups()
        if num is not None:
            toks.append(("int", int(num)))
        elif name is not None:
            toks.append(("name", name))
        elif op is not None and op.strip():
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} in {s!r}")
            toks.append(("op", op))
    return toks


class _Parser:
    def __init__(self, text, symbols, const):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.symbols = symbols
        self.const = const

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                try:
                    val = val / rhs
                except (ZeroDivisionError, ArithmeticError) as exc:
                    raise ParseError(f"invalid division in {self.text!r}: {exc}") from exc
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "int":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            try:
                return base ** (sign * val)
            except (ZeroDivisionError, ValueError) as exc:
                raise ParseError(f"invalid power in {self.text!r}: {exc}") from exc
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.const(val)
        if kind == "name":
            if val not in self.symbols:
                raise ParseError(f"unknown symbol {val!r} in {self.text!r}")
            return self.symbols[val]
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_expr(text: str, symbols: dict, const):
    """Evaluate `text` using the given symbol table and integer coercion."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    return _Parser(text, symbols, const).parse()
