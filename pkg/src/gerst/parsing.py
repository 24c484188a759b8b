"""
Plain-text polynomials:

    expr := term (('+' | '-') term)*
    term := rational? mono*          (factors may be separated by '*' or spaces)
    mono := ('x' | 'y') ('^' nat)?

Words are read left to right and normalized, so "y x" is x y + x^2 on the
Jordan plane.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import AlgebraElement, add_term, twisted_algebra

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[xy])|(?P<op>[-+*/^]))")


class ParseError(ValueError):
    def __init__(self, message, text, pos):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, twist):
        self.text = text
        self.alg = twisted_algebra(twist)
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        raise ParseError(message, self.text, (tok or self.peek())[2])

    def nat(self):
        kind, val, _ = self.peek()
        if kind != "num":
            self.fail("expected a natural number")
        self.take()
        return int(val)

    def expr(self):
        out = {}
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        while True:
            for m, c in self.term().items():
                add_term(out, m, sign * c)
            kind, val, _ = self.peek()
            if kind == "end":
                return out
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            self.fail("expected '+' or '-'")

    def term(self):
        coeff = Fraction(1)
        seen = False
        kind, val, _ = self.peek()
        if kind == "num":
            num = self.nat()
            den = 1
            if self.peek()[:2] == ("op", "/"):
                self.take()
                tok = self.peek()
                den = self.nat()
                if den == 0:
                    self.fail("zero denominator", tok)
            coeff = Fraction(num, den)
            seen = True
        word = []
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                if self.peek()[0] not in ("var", "num"):
                    self.fail("expected a factor after '*'")
                if self.peek()[0] == "num":
                    self.fail("coefficient must come first")
                continue
            if kind != "var":
                break
            self.take()
            power = 1
            if self.peek()[:2] == ("op", "^"):
                self.take()
                power = self.nat()
            word.extend(val * power)
            seen = True
        if not seen:
            self.fail("expected a term")
        return {m: coeff * c for m, c in self.alg.normalize_word(word).items()}


def parse_polynomial(text, twist):
    """AlgebraElement from the plain-text grammar above."""
    parser = _Parser(text, twist)
    return AlgebraElement(parser.alg, parser.expr())


def format_polynomial(el):
    return str(el)
