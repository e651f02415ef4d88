"""Recursive-descent parser for bundle and form expressions.

    expr   := term (('+' | '-') term)*
    term   := ['-'] factor ('*' factor)*
    factor := int [factor] | 'U' int | 'H' | 'h' | 'Sym3(' factor ')'
            | '<' int (',' int)* '>' ['*' factor] | '(' expr ')'

Forms (``<...>``, ``h``) and bundles may be multiplied (the GW action on
bundles) but not added.  Plain integers mix with either.
"""
from __future__ import annotations

import re

from .bundles import H, U, VirtualBundle, sym3
from .errors import ExpressionSyntaxError, InvalidUnit
from .gw_arith import Q, Backend, GWElement, hyperbolic

_INT = re.compile(r"\d+")
_NAME = re.compile(r"[A-Za-z][A-Za-z0-9]*")


class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos

    def __repr__(self):
        return f"{self.kind}:{self.text}@{self.pos}"


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos].isdigit():
            m = _INT.match(text, pos)
            toks.append(_Tok("int", m.group(), pos))
            pos = m.end()
        elif text[pos].isalpha():
            m = _NAME.match(text, pos)
            word = m.group()
            toks.append(_Tok("name", word, pos))
            pos = m.end()
        else:
            toks.append(_Tok("op", text[pos], pos))
            pos += 1
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, backend: Backend):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.backend = backend

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        offset = len(self.text[: tok.pos].encode())
        raise ExpressionSyntaxError(msg, offset)

    def expect(self, op):
        t = self.peek()
        if t.kind != "op" or t.text != op:
            what = "end of input" if t.kind == "end" else repr(t.text)
            self.fail(f"expected {op!r}, found {what}")
        return self.take()

    def is_op(self, op) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text == op

    # grammar ----------------------------------------------------------------
    def parse(self):
        value = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.is_op("+") or self.is_op("-"):
            op = self.take()
            rhs = self.term()
            value = self.combine(value, rhs, op)
        return value

    def term(self):
        negate = False
        if self.is_op("-"):
            self.take()
            negate = True
        value = self.factor()
        while self.is_op("*"):
            self.take()
            value = self.multiply(value, self.factor())
        return -value if negate else value

    def factor(self):
        t = self.peek()
        if t.kind == "end":
            self.fail("unexpected end of input")
        if t.kind == "int":
            self.take()
            nxt = self.peek()
            if nxt.pos == t.pos + len(t.text) and (nxt.kind == "name" or nxt.text in ("<", "(")):
                return self.multiply(int(t.text), self.factor())  # "16h", "8<-1>"
            return int(t.text)
        if t.kind == "name":
            self.take()
            if t.text == "H":
                return H()
            if t.text == "h":
                return hyperbolic(1, self.backend)
            if t.text == "Sym3":
                self.expect("(")
                inner_tok = self.peek()
                inner = self.factor()
                self.expect(")")
                return self.sym3_of(inner, inner_tok)
            m = re.fullmatch(r"U(\d+)", t.text)
            if m:
                i = int(m.group(1))
                if i < 1:
                    self.fail("factor indices start at 1", t)
                return U(i)
            if t.text == "U" and self.peek().kind == "int":
                i = int(self.take().text)
                if i < 1:
                    self.fail("factor indices start at 1", t)
                return U(i)
            self.fail(f"unknown symbol {t.text!r}", t)
        if t.kind == "op" and t.text == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        if t.kind == "op" and t.text == "<":
            return self.form()
        what = "end of input" if t.kind == "end" else repr(t.text)
        self.fail(f"expected a factor, found {what}")

    def signed_int(self) -> int:
        sign = 1
        if self.is_op("-"):
            self.take()
            sign = -1
        t = self.peek()
        if t.kind != "int":
            self.fail("expected an integer")
        self.take()
        return sign * int(t.text)

    def form(self):
        start = self.expect("<")
        units = [self.signed_int()]
        while self.is_op(","):
            self.take()
            units.append(self.signed_int())
        self.expect(">")
        try:
            value = GWElement.from_diagonal(units, self.backend)
        except InvalidUnit as exc:
            self.fail(str(exc), start)
        return value

    def sym3_of(self, inner, tok):
        if isinstance(inner, VirtualBundle) and len(inner.terms) == 1:
            (m, n), = inner.terms.items()
            if n == 1 and m.twist == 1 and len(m.factors) == 1 and m.factors[0].kind == "U":
                return sym3(m.factors[0].index)
        self.fail("Sym3 applies only to a tautological bundle U<i>", tok)

    def multiply(self, a, b):
        return a * b

    def combine(self, a, b, op):
        a_form, b_form = isinstance(a, GWElement), isinstance(b, GWElement)
        a_bun, b_bun = isinstance(a, VirtualBundle), isinstance(b, VirtualBundle)
        if (a_form and b_bun) or (a_bun and b_form):
            self.fail("cannot add a form and a bundle", op)
        return a + b if op.text == "+" else a - b


def parse_expression(text: str, backend: Backend = Q):
    """Parse text into a VirtualBundle or a GWElement (a bare integer becomes a form)."""
    value = _Parser(text, backend).parse()
    if isinstance(value, int):
        return GWElement.from_int(value, backend)
    return value


def parse_bundle(text: str) -> VirtualBundle:
    value = _Parser(text, Q).parse()
    if isinstance(value, int):
        return VirtualBundle.unit() * value
    if not isinstance(value, VirtualBundle):
        raise ExpressionSyntaxError("expected a bundle expression, got a form", 0)
    return value


def parse_form(text: str, backend: Backend = Q) -> GWElement:
    value = parse_expression(text, backend)
    if not isinstance(value, GWElement):
        raise ExpressionSyntaxError("expected a form expression, got a bundle", 0)
    return value
