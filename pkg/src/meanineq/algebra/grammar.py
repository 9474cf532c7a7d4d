"""Plain-text literals for polynomials and radical expressions.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT | "t" | "R1" | "R2" | "(" expr ")"

``format_poly`` / ``format_radical`` emit the canonical form, which parses
back to the same value and re-formats to the same text.
"""
from __future__ import annotations

import re

from ..errors import GrammarError
from .polynomial import RationalPolynomial
from .radical import MONOMIALS, RadicalExpression

_TOKEN = re.compile(r"\s*(?:(\d+)|(R1|R2|t)|([-+*^()]))")


def _tokenize(text):
    toks = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise GrammarError(f"unexpected character {text[col]!r}", text, col)
        start = m.start(m.lastindex)
        toks.append((m.group(m.lastindex), start))
        pos = m.end()
    toks.append(("", end))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def fail(self, msg):
        raise GrammarError(msg, self.text, self.toks[self.i][1])

    def take(self, tok=None):
        cur = self.peek()
        if tok is not None and cur != tok:
            self.fail(f"expected {tok!r}, found {cur or 'end of input'!r}")
        self.i += 1
        return cur

    def parse(self):
        if self.peek() == "":
            self.fail("empty expression")
        val = self.expr()
        if self.peek() != "":
            self.fail(f"unexpected {self.peek()!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() == "*":
            self.take()
            val = val * self.unary()
        return val

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.peek()
            if not tok.isdigit():
                self.fail("exponent must be a non-negative integer")
            self.take()
            n = int(tok)
            out = RadicalExpression.poly(RationalPolynomial.constant(1))
            for _ in range(n):
                out = out * base
            return out
        return base

    def atom(self):
        tok = self.peek()
        if tok.isdigit():
            self.take()
            return RadicalExpression.poly(RationalPolynomial.constant(int(tok)))
        if tok == "t":
            self.take()
            return RadicalExpression.poly(RationalPolynomial([0, 1]))
        if tok == "R1":
            self.take()
            return RadicalExpression.r1()
        if tok == "R2":
            self.take()
            return RadicalExpression.r2()
        if tok == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        self.fail(f"unexpected {tok or 'end of input'!r}")


def parse_radical(text: str) -> RadicalExpression:
    return _Parser(text).parse()


def parse_poly(text: str) -> RationalPolynomial:
    e = parse_radical(text)
    if not e.is_polynomial():
        raise GrammarError("radicals are not allowed in a polynomial literal", text, 0)
    return e.as_polynomial()


def _coeff_text(c, strict):
    if c.denominator == 1:
        return str(c.numerator)
    if strict:
        raise ValueError(f"non-integer coefficient {c} cannot be written as a literal")
    return f"{c.numerator}/{c.denominator}"


def format_poly(p: RationalPolynomial, strict: bool = False) -> str:
    """Canonical text, highest degree first, e.g. ``3*t^2 - t + 1``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if not mono:
            body = _coeff_text(mag, strict)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coeff_text(mag, strict)}*{mono}"
        parts.append((sign, body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_NAMES = {(1, 0): "R1", (0, 1): "R2", (1, 1): "R1*R2"}


def format_radical(e: RadicalExpression, strict: bool = False) -> str:
    """Canonical text: polynomial part, then ``(P)*R1``, ``(P)*R2``, ``(P)*R1*R2``."""
    if e.is_zero():
        return "0"
    chunks = []
    for key in MONOMIALS:
        if key not in e.parts:
            continue
        body = format_poly(e.parts[key], strict)
        chunks.append(body if key == (0, 0) else f"({body})*{_NAMES[key]}")
    return " + ".join(chunks)
