"""Parser for scalar and Cartan-element expressions.

Grammar (whitespace is ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | "q" | "h" | "K" ["[" INT "]"] | "t" "[" ["-"] INT "]" | "(" expr ")"

``q`` is the indeterminate of Q(q); ``h``, ``K`` and ``t[m]`` name the
generators of the polynomial, group and function families. Negative
exponents are accepted on scalars and on group monomials only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import scalar as S
from .cartan import BaseElement, Family, FunZFamily, GroupFamily, PolyFamily, group_gen, h_var, point_idempotent
from .errors import DivisionByZero, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3):
            toks.append(_Tok("op", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


def _is_scalar(v) -> bool:
    return not isinstance(v, BaseElement)


class _Parser:
    def __init__(self, text: str, field: str, family: Family | None):
        self.text = text
        self.field = field
        self.family = family
        self.toks = _tokenize(text)
        self.i = 0

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.pos, self.text)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text:
            self.error(f"expected '{text}'")
        return self.take()

    def parse(self):
        if self.peek().kind == "end":
            self.error("empty expression")
        v = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected '{self.peek().text}'")
        return v

    def expr(self):
        v = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            w = self.term()
            v = self.combine(v, w, op)
        return v

    def term(self):
        v = self.unary()
        while self.peek().text in ("*", "/"):
            tok = self.take()
            w = self.unary()
            if tok.text == "*":
                v = self.combine(v, w, "*")
            else:
                if not _is_scalar(w):
                    self.error("division by a non-scalar", tok)
                if S.is_zero(w):
                    raise DivisionByZero(f"division by zero at position {tok.pos}")
                v = v / w if not _is_scalar(v) else S.div(v, w)
        return v

    def combine(self, v, w, op):
        if _is_scalar(v) and _is_scalar(w):
            return {"+": S.add, "-": S.sub, "*": S.mul}[op](v, w)
        if op == "+":
            return v + w if not _is_scalar(v) else w + v
        if op == "-":
            return v - w if not _is_scalar(v) else (-w) + v
        return v * w if not _is_scalar(v) else w * v

    def unary(self):
        t = self.peek()
        if t.text == "-":
            self.take()
            return -self.unary()
        if t.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text != "^":
            return base
        caret = self.take()
        sign = 1
        if self.peek().text == "-":
            self.take()
            sign = -1
        t = self.peek()
        if t.kind != "int":
            self.error("expected an integer exponent")
        self.take()
        n = sign * int(t.text)
        if _is_scalar(base):
            if n < 0 and S.is_zero(base):
                raise DivisionByZero(f"negative power of zero at position {caret.pos}")
            return S.power(base, n)
        if n >= 0:
            return base**n
        if isinstance(base.family, GroupFamily) and len(base.terms) == 1:
            (g, c), = base.terms.items()
            inv = BaseElement.monomial(base.family, tuple(-x for x in g), S.inv(c))
            return inv ** (-n)
        self.error("negative exponent is only allowed on group monomials", caret)

    def atom(self):
        t = self.peek()
        if t.kind == "int":
            self.take()
            return S.coerce(int(t.text), self.field)
        if t.text == "(":
            self.take()
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "name":
            self.take()
            if t.text == "q":
                if self.field != S.QQ_Q:
                    self.error("'q' is only available over Q(q)", t)
                return S.Q
            if t.text == "h":
                if not isinstance(self.family, PolyFamily):
                    self.error("'h' needs the polynomial Cartan family", t)
                return h_var(self.family)
            if t.text == "K":
                if not isinstance(self.family, GroupFamily):
                    self.error("'K' needs the group-algebra Cartan family", t)
                idx = 0
                if self.peek().text == "[":
                    self.take()
                    idx = self.index()
                    self.expect("]")
                elif self.family.ngens != 1:
                    self.error("write K[i] when the group has several generators", t)
                if not 0 <= idx < self.family.ngens:
                    self.error(f"no generator K[{idx}]", t)
                return group_gen(self.family, idx)
            if t.text == "t":
                if not isinstance(self.family, FunZFamily):
                    self.error("'t[m]' needs the function family", t)
                self.expect("[")
                m = self.index()
                self.expect("]")
                return point_idempotent(self.family, m)
            self.error(f"unknown name '{t.text}'", t)
        self.error(f"unexpected '{t.text}'" if t.kind != "end" else "unexpected end of input")

    def index(self) -> int:
        sign = 1
        if self.peek().text == "-":
            self.take()
            sign = -1
        t = self.peek()
        if t.kind != "int":
            self.error("expected an integer index")
        self.take()
        return sign * int(t.text)


def parse_expression(text: str, field: str = S.QQ, family: Family | None = None):
    """Parse ``text`` into a scalar or, if it mentions a generator, a BaseElement."""
    return _Parser(text, field, family).parse()


def parse_scalar(text: str, field: str = S.QQ):
    v = _Parser(text, field, None).parse()
    return v


def parse_element(text: str, family: Family) -> BaseElement:
    v = parse_expression(text, family.field, family)
    if isinstance(v, BaseElement):
        return v
    return BaseElement.scalar(family, v)


def parse_rational(text: str) -> Fraction:
    return parse_scalar(text, S.QQ)
