"""Parsing of defining-function expressions into truncated series.

Grammar: nonnegative integer literals, the imaginary unit ``i``,
identifiers (``z1``, ``z1b``, ``wb``, ``x1``, ``y``, ``yx1``, ``a1``,
``b``, ``w``, ``wz1``, ...), binary ``+ - * /``, unary minus, ``^`` with
a nonnegative integer literal exponent, and parentheses.  ``^`` binds
tightest, then ``* /``, then ``+ -``; the binary operators associate to
the left.  Rationals are written as quotients, e.g. ``3/2``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonUnitError, ParseError
from .scalars import I as IMAG_UNIT
from .series import TruncatedSeries, VariableContext


# ----------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Number:
    value: int


@dataclass(frozen=True)
class ImaginaryUnit:
    pass


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


# ----------------------------------------------------------------------
# tokenizer


_OPERATORS = "+-*/^()"


def _tokenize(text: str):
    tokens = []  # (kind, value, position)
    pos = 0
    length = len(text)
    while pos < length:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < length and text[pos].isdigit():
                pos += 1
            tokens.append(("int", int(text[start:pos]), start))
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < length and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            tokens.append(("ident", text[start:pos], start))
            continue
        if ch in _OPERATORS:
            tokens.append((ch, ch, pos))
            pos += 1
            continue
        raise ParseError(f"unknown character {ch!r}", pos)
    tokens.append(("end", None, length))
    return tokens


# ----------------------------------------------------------------------
# Pratt parser

_BINARY_PRECEDENCE = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30}
_UNARY_MINUS_PRECEDENCE = 15


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind):
        token = self.advance()
        if token[0] != kind:
            raise ParseError(f"expected {kind!r}, found {token[1]!r}", token[2])
        return token

    def parse_expression(self, min_precedence=0):
        node = self.parse_prefix()
        while True:
            kind, _, position = self.peek()
            precedence = _BINARY_PRECEDENCE.get(kind)
            if precedence is None or precedence < min_precedence:
                return node
            self.advance()
            if kind == "^":
                node = Pow(node, self.parse_exponent())
                continue
            # left associative: the right operand binds one level tighter
            right = self.parse_expression(precedence + 1)
            if kind == "+":
                node = Add(node, right)
            elif kind == "-":
                node = Sub(node, right)
            elif kind == "*":
                node = Mul(node, right)
            else:
                node = Div(node, right)

    def parse_prefix(self):
        kind, value, position = self.advance()
        if kind == "int":
            return Number(value)
        if kind == "ident":
            if value == "i":
                return ImaginaryUnit()
            return Variable(value)
        if kind == "-":
            return Neg(self.parse_expression(_UNARY_MINUS_PRECEDENCE))
        if kind == "(":
            node = self.parse_expression()
            self.expect(")")
            return node
        raise ParseError(f"unexpected token {value!r}", position)

    def parse_exponent(self) -> int:
        kind, value, position = self.advance()
        if kind != "int":
            raise ParseError(
                "exponent must be a nonnegative integer literal", position
            )
        return value


def parse(text: str):
    """Parse an expression into its AST; raises ParseError with position."""
    parser = _Parser(text)
    node = parser.parse_expression()
    kind, value, position = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing token {value!r}", position)
    return node


# ----------------------------------------------------------------------
# evaluation


def evaluate(ast, context: VariableContext, order: int) -> TruncatedSeries:
    """Evaluate an AST to an exact series in the given context."""
    if isinstance(ast, Number):
        return TruncatedSeries.constant(context, order, ast.value)
    if isinstance(ast, ImaginaryUnit):
        return TruncatedSeries.constant(context, order, IMAG_UNIT)
    if isinstance(ast, Variable):
        return TruncatedSeries.variable(context, order, ast.name)
    if isinstance(ast, Neg):
        return -evaluate(ast.operand, context, order)
    if isinstance(ast, Add):
        return evaluate(ast.left, context, order) + evaluate(ast.right, context, order)
    if isinstance(ast, Sub):
        return evaluate(ast.left, context, order) - evaluate(ast.right, context, order)
    if isinstance(ast, Mul):
        return evaluate(ast.left, context, order) * evaluate(ast.right, context, order)
    if isinstance(ast, Div):
        numerator = evaluate(ast.left, context, order)
        denominator = evaluate(ast.right, context, order)
        if not denominator.constant_term():
            raise NonUnitError("division by a series with zero constant term")
        return numerator * denominator.invert_unit()
    if isinstance(ast, Pow):
        return evaluate(ast.base, context, order) ** ast.exponent
    raise TypeError(f"not an expression node: {ast!r}")


def parse_series(text: str, context: VariableContext, order: int) -> TruncatedSeries:
    return evaluate(parse(text), context, order)


def render(ast) -> str:
    """Deterministic text for an AST, fully parenthesized where needed."""
    if isinstance(ast, Number):
        return str(ast.value)
    if isinstance(ast, ImaginaryUnit):
        return "i"
    if isinstance(ast, Variable):
        return ast.name
    if isinstance(ast, Neg):
        return f"-({render(ast.operand)})"
    if isinstance(ast, Add):
        return f"({render(ast.left)} + {render(ast.right)})"
    if isinstance(ast, Sub):
        return f"({render(ast.left)} - {render(ast.right)})"
    if isinstance(ast, Mul):
        return f"({render(ast.left)} * {render(ast.right)})"
    if isinstance(ast, Div):
        return f"({render(ast.left)} / {render(ast.right)})"
    if isinstance(ast, Pow):
        return f"({render(ast.base)})^{ast.exponent}"
    raise TypeError(f"not an expression node: {ast!r}")
