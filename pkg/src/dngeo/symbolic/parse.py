"""Recursive-descent parser for scalar expressions.

Grammar (EBNF, also documented in the README):

    expr    = term , { ("+" | "-") , term } ;
    term    = unary , { ("*" | "/") , unary } ;
    unary   = "-" , unary | power ;
    power   = atom , [ "^" , integer ] ;
    atom    = identifier | integer | "i" | "(" , expr , ")" ;

Identifiers match [a-zA-Z][a-zA-Z0-9_]*; "^" binds tighter than "*"/"/",
which bind tighter than "+"/"-"; "i" is the imaginary unit and only legal in
complex mode.  Rational literals arise from integer division.  Parsing then
printing then re-parsing is the identity on canonical forms.
"""

from __future__ import annotations

from ..errors import ExprSyntaxError, UnknownVariableError, ZeroDenominatorError
from .scalar import Chart, ScalarExpr

_OPS = set("+-*/^()")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", text, i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, chart: Chart):
        self.text = text
        self.chart = chart
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise ExprSyntaxError(
                f"expected {kind!r}, found {tok[1] or 'end of input'!r}",
                self.text,
                tok[2],
            )
        return self.advance()

    def parse(self) -> ScalarExpr:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return value

    def expr(self) -> ScalarExpr:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> ScalarExpr:
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.advance()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ExprSyntaxError("division by the zero polynomial", self.text, pos)
                value = value / rhs
        return value

    def unary(self) -> ScalarExpr:
        if self.peek()[0] == "-":
            self.advance()
            return -self.unary()
        return self.power()

    def power(self) -> ScalarExpr:
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("int")
            return base ** int(tok[1])
        return base

    def atom(self) -> ScalarExpr:
        tok = self.advance()
        kind, value, pos = tok
        if kind == "int":
            return self.chart.const(int(value))
        if kind == "ident":
            if value == "i" and self.chart.mode == "complex":
                return self.chart.imag_unit()
            if value not in self.chart.variables:
                raise UnknownVariableError(
                    f"unknown variable {value!r}", self.text, pos
                )
            return self.chart.var(value)
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ExprSyntaxError(
            f"unexpected {value or 'end of input'!r}", self.text, pos
        )


def parse_scalar(text: str, chart: Chart) -> ScalarExpr:
    """Parse expression text into a canonical ScalarExpr on the chart."""
    try:
        return _Parser(text, chart).parse()
    except ZeroDenominatorError:
        raise ExprSyntaxError("division by the zero polynomial", text, 0) from None
