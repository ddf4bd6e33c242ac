"""Parameter expressions: a small recursive-descent parser and two evaluators.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := '-' factor | '(' expr ')' | rational | ident
    rational := int ('/' posint)?

``evaluate`` gives a Scalar under a parameter assignment.  ``evaluate_linear``
additionally lets identifiers name basis vectors and returns coordinates, so
table entries such as ``-r3*v1 + r2*v2`` read the way they are written.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import ExprEvalError, ExprSyntaxError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Num, Name, Neg, BinOp]


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'ident', 'op', 'end'
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        integer, ident, other = m.groups()
        start = m.start(m.lastindex)
        if integer is not None:
            tokens.append(Token("int", integer, start))
        elif ident is not None:
            tokens.append(Token("ident", ident, start))
        elif other is not None and not other.isspace():
            if other not in "+-*/()":
                raise ExprSyntaxError(f"unexpected character {other!r}", start)
            tokens.append(Token("op", other, start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def take(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        tok = self.take()
        if tok.text != text or tok.kind != "op":
            raise ExprSyntaxError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)

    def parse(self) -> Expr:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return Neg(self.factor())
        if tok.kind == "op" and tok.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "int":
            self.take()
            value = Fraction(int(tok.text))
            # greedy literal: "p/q" with a positive integer q is one number
            if self.peek().text == "/" and self.peek(1).kind == "int" and int(self.peek(1).text) > 0:
                self.take()
                value /= int(self.take().text)
            return Num(value)
        if tok.kind == "ident":
            self.take()
            return Name(tok.text)
        raise ExprSyntaxError(f"expected a number, name or '(', found {tok.text or 'end of input'!r}", tok.pos)


def parse_expr(text: str) -> Expr:
    """Parse ``text``; raises :class:`ExprSyntaxError` carrying the offending position."""
    return _Parser(text).parse()


def names(node: Expr) -> set[str]:
    if isinstance(node, Name):
        return {node.ident}
    if isinstance(node, Neg):
        return names(node.operand)
    if isinstance(node, BinOp):
        return names(node.left) | names(node.right)
    return set()


def evaluate(node: Expr, params: Mapping[str, Fraction] | None = None) -> Fraction:
    params = params or {}
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Name):
        if node.ident not in params:
            raise ExprEvalError(f"unknown parameter {node.ident!r}")
        return Fraction(params[node.ident])
    if isinstance(node, Neg):
        return -evaluate(node.operand, params)
    left, right = evaluate(node.left, params), evaluate(node.right, params)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if right == 0:
        raise ExprEvalError("division by zero")
    return left / right


# a linear form: constant part under key None, basis coordinates under labels
_Linear = dict


def _lin_add(a: _Linear, b: _Linear, sign: int) -> _Linear:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + sign * v
    return out


def _lin_scale(a: _Linear, s: Fraction) -> _Linear:
    return {k: s * v for k, v in a.items()}


def _constant(a: _Linear) -> Fraction | None:
    if any(k is not None and v for k, v in a.items()):
        return None
    return a.get(None, Fraction(0))


def _linear(node: Expr, params: Mapping[str, Fraction], basis: Sequence[str]) -> _Linear:
    if isinstance(node, Num):
        return {None: node.value}
    if isinstance(node, Name):
        if node.ident in params:
            return {None: Fraction(params[node.ident])}
        if node.ident in basis:
            return {node.ident: Fraction(1)}
        raise ExprEvalError(f"unknown name {node.ident!r}")
    if isinstance(node, Neg):
        return _lin_scale(_linear(node.operand, params, basis), Fraction(-1))
    left, right = _linear(node.left, params, basis), _linear(node.right, params, basis)
    if node.op in "+-":
        return _lin_add(left, right, 1 if node.op == "+" else -1)
    cr = _constant(right)
    if node.op == "*":
        cl = _constant(left)
        if cl is not None:
            return _lin_scale(right, cl)
        if cr is not None:
            return _lin_scale(left, cr)
        raise ExprEvalError("product of two vectors")
    if cr is None:
        raise ExprEvalError("division by a vector")
    if cr == 0:
        raise ExprEvalError("division by zero")
    return _lin_scale(left, 1 / cr)


def evaluate_linear(node: Expr, params: Mapping[str, Fraction], basis: Sequence[str]) -> list[Fraction]:
    """Coordinates of a linear combination of ``basis`` labels with parameter coefficients."""
    form = _linear(node, params, basis)
    if form.get(None, 0):
        raise ExprEvalError("vector expression has a nonzero scalar part")
    return [form.get(label, Fraction(0)) for label in basis]
