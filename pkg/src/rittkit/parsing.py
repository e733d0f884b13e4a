"""Expression grammar for differential polynomials.

Accepted syntax: integer and a/b rational literals, declared
indeterminates, derivative suffixes ``u_[x,x,y]`` (derivation names) or
prime shorthand ``y''`` (single-derivation contexts only), operators
``+ - * ^`` and parentheses.  Multiplication is always explicit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .context import Context, Derivative, RittkitError
from .diffpoly import DiffPoly


class ParseError(RittkitError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass
class _Token:
    kind: str  # 'int' 'rat' 'name' 'op' 'end'
    value: str
    line: int
    column: int


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = text[i:j]
            # a/b rational literal: integer immediately followed by / integer
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                tokens.append(_Token("rat", text[i:k], line, start_col))
                col += k - i
                i = k
                continue
            tokens.append(_Token("int", num, line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            # trailing underscore starts a bracket suffix: u_[x,y]
            if name.endswith("_") and j < n and text[j] == "[":
                name = name[:-1]
                if not name:
                    raise ParseError("name expected before '_['", line, start_col)
            tokens.append(_Token("name", name, line, start_col))
            col += j - i
            i = j
            continue
        if ch in "+-*^()[],'":
            tokens.append(_Token("op", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], ctx: Context):
        self.tokens = tokens
        self.pos = 0
        self.ctx = ctx

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, value: str) -> _Token:
        tok = self.peek()
        if tok.kind == "op" and tok.value == value:
            return self.next()
        raise ParseError(f"expected {value!r}", tok.line, tok.column)

    def parse(self) -> DiffPoly:
        poly = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.value!r}", tok.line, tok.column)
        return poly

    def expr(self) -> DiffPoly:
        left = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "+-":
                self.next()
                right = self.term()
                left = left + right if tok.value == "+" else left - right
            else:
                return left

    def term(self) -> DiffPoly:
        left = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value == "*":
                self.next()
                left = left * self.unary()
            elif tok.kind in ("name", "int", "rat") or (tok.kind == "op" and tok.value == "("):
                raise ParseError("implicit multiplication is not allowed", tok.line, tok.column)
            else:
                return left

    def unary(self) -> DiffPoly:
        tok = self.peek()
        if tok.kind == "op" and tok.value == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self) -> DiffPoly:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.value == "^":
            self.next()
            etok = self.peek()
            if etok.kind != "int":
                raise ParseError("exponent must be a nonnegative integer", etok.line, etok.column)
            self.next()
            return base ** int(etok.value)
        return base

    def atom(self) -> DiffPoly:
        tok = self.next()
        if tok.kind == "int":
            return DiffPoly.constant(int(tok.value))
        if tok.kind == "rat":
            num, den = tok.value.split("/")
            if int(den) == 0:
                raise ParseError("zero denominator", tok.line, tok.column)
            return DiffPoly.constant(Fraction(int(num), int(den)))
        if tok.kind == "op" and tok.value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if tok.kind == "name":
            return self.derivative_atom(tok)
        raise ParseError(f"unexpected token {tok.value!r}", tok.line, tok.column)

    def derivative_atom(self, tok: _Token) -> DiffPoly:
        ctx = self.ctx
        if tok.value in ctx.derivations:
            raise ParseError(f"{tok.value!r} is a derivation, not an indeterminate", tok.line, tok.column)
        if tok.value not in ctx.indeterminates:
            raise ParseError(f"undeclared name {tok.value!r}", tok.line, tok.column)
        indet = ctx.indeterminate_index(tok.value)
        op = [0] * ctx.m
        nxt = self.peek()
        if nxt.kind == "op" and nxt.value == "'":
            if ctx.m != 1:
                raise ParseError("prime shorthand requires exactly one derivation", nxt.line, nxt.column)
            while self.peek().kind == "op" and self.peek().value == "'":
                self.next()
                op[0] += 1
        elif nxt.kind == "op" and nxt.value == "[":
            self.next()
            while True:
                name_tok = self.peek()
                if name_tok.kind != "name":
                    raise ParseError("derivation name expected", name_tok.line, name_tok.column)
                self.next()
                if name_tok.value not in ctx.derivations:
                    raise ParseError(f"undeclared derivation {name_tok.value!r}", name_tok.line, name_tok.column)
                op[ctx.derivation_index(name_tok.value)] += 1
                sep = self.next()
                if sep.kind == "op" and sep.value == ",":
                    continue
                if sep.kind == "op" and sep.value == "]":
                    break
                raise ParseError("expected ',' or ']'", sep.line, sep.column)
        return DiffPoly.variable(Derivative(indet, tuple(op)))


def parse_poly(text: str, ctx: Context) -> DiffPoly:
    """Parse one polynomial expression in the given context."""
    return _Parser(_lex(text), ctx).parse()
