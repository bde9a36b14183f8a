"""A small expression language for the classes fed to the localization sums.

Grammar (integers, rational constants like 3/2, named symbols, parentheses):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' signed-integer)?
    atom   := number | symbol | '(' expr ')'

Symbols are resolved against the evaluation environment (P1..PK / p1..pK,
L1..LN / l1..lN, q, z).  Everything evaluates to an exact rational.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union


class ExprError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Num:
    value: Fraction

    def evaluate(self, env: Mapping[str, Fraction]) -> Fraction:
        return self.value


@dataclass(frozen=True)
class Sym:
    name: str

    def evaluate(self, env: Mapping[str, Fraction]) -> Fraction:
        try:
            return Fraction(env[self.name])
        except KeyError:
            raise ExprError(f"unknown symbol '{self.name}'", 0) from None


@dataclass(frozen=True)
class Neg:
    arg: "Expr"

    def evaluate(self, env: Mapping[str, Fraction]) -> Fraction:
        return -self.arg.evaluate(env)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"

    def evaluate(self, env: Mapping[str, Fraction]) -> Fraction:
        a = self.left.evaluate(env)
        b = self.right.evaluate(env)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if self.op == "/":
            if b == 0:
                raise ZeroDivisionError("division by zero in class expression")
            return a / b
        raise AssertionError(self.op)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int

    def evaluate(self, env: Mapping[str, Fraction]) -> Fraction:
        return self.base.evaluate(env) ** self.exponent


Expr = Union[Num, Sym, Neg, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|([()+\-*/^]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._tokenize()
        self.index = 0

    def _tokenize(self) -> None:
        pos = 0
        while pos < len(self.text):
            match = _TOKEN.match(self.text, pos)
            if not match or match.end() == pos:
                if self.text[pos:].strip():
                    raise ExprError(f"unexpected character {self.text[pos]!r}", pos)
                break
            number, name, op = match.groups()
            if number is not None:
                self.tokens.append(("num", number, match.start()))
            elif name is not None:
                self.tokens.append(("sym", name, match.start()))
            else:
                self.tokens.append(("op", op, match.start()))
            pos = match.end()

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression", len(self.text))
        self.index += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.next()
        if tok[0] != "op" or tok[1] != op:
            raise ExprError(f"expected '{op}'", tok[2])

    def parse(self) -> Expr:
        expr = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExprError(f"trailing input {tok[1]!r}", tok[2])
        return expr

    def expr(self) -> Expr:
        node = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.next()
                node = BinOp(tok[1], node, self.term())
            else:
                return node

    def term(self) -> Expr:
        node = self.factor()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self.next()
                node = BinOp(tok[1], node, self.factor())
            else:
                return node

    def factor(self) -> Expr:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.next()
            return Neg(self.factor())
        node = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.next()
            node = Pow(node, self._signed_integer())
        return node

    def _signed_integer(self) -> int:
        tok = self.next()
        sign = 1
        if tok[0] == "op" and tok[1] == "-":
            sign = -1
            tok = self.next()
        if tok[0] != "num":
            raise ExprError("exponent must be an integer", tok[2])
        return sign * int(tok[1])

    def atom(self) -> Expr:
        tok = self.next()
        if tok[0] == "num":
            return Num(Fraction(int(tok[1])))
        if tok[0] == "sym":
            return Sym(tok[1])
        if tok[0] == "op" and tok[1] == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprError(f"unexpected token {tok[1]!r}", tok[2])


def parse_expression(text: str) -> Expr:
    if not text.strip():
        raise ExprError("empty expression", 0)
    return _Parser(text).parse()
