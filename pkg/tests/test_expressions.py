"""Expression grammar: parsing, precedence, evaluation, round trips."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import pseudosphere as ps
from pseudosphere.errors import NonUnitError, ParseError, UnknownVariableError
from pseudosphere.expressions import (
    Add,
    Div,
    ImaginaryUnit,
    Mul,
    Neg,
    Number,
    Pow,
    Sub,
    Variable,
    evaluate,
    parse,
    render,
)
from pseudosphere.scalars import GaussianRational

CTX = ps.canonical_context(2)


def test_parse_heisenberg_ast():
    ast = parse("-wb + z1*z1b + z2*z2b")
    assert ast == Add(
        Add(Neg(Variable("wb")), Mul(Variable("z1"), Variable("z1b"))),
        Mul(Variable("z2"), Variable("z2b")),
    )


def test_parse_div_node():
    ast = parse("1/(1 - z1)")
    assert isinstance(ast, Div)
    assert ast.left == Number(1)


def test_parse_nested_pow_mul():
    ast = parse("(3/2 + 1/2*i)*z1^2*wb")
    assert isinstance(ast, Mul)
    assert isinstance(ast.left, Mul)
    assert ast.left.right == Pow(Variable("z1"), 2)


def test_precedence_pow_binds_tightest():
    assert parse("-z1^2") == Neg(Pow(Variable("z1"), 2))
    assert parse("2*z1^2") == Mul(Number(2), Pow(Variable("z1"), 2))


def test_left_associativity():
    assert parse("1 - 2 - 3") == Sub(Sub(Number(1), Number(2)), Number(3))
    assert parse("8/2/2") == Div(Div(Number(8), Number(2)), Number(2))


def test_syntax_errors_carry_position():
    with pytest.raises(ParseError) as excinfo:
        parse("z1 + ")
    assert excinfo.value.position == 5
    with pytest.raises(ParseError) as excinfo:
        parse("z1 @ z2")
    assert excinfo.value.position == 3


def test_pow_requires_integer_literal():
    with pytest.raises(ParseError):
        parse("z1^z2")
    with pytest.raises(ParseError):
        parse("z1^(2)")


def test_evaluate_heisenberg():
    series = ps.parse_series("-wb + z1*z1b + z2*z2b", CTX, 6)
    assert series.coefficient_of(wb=1) == GaussianRational(-1)
    assert series.coefficient_of(z1=1, z1b=1) == GaussianRational(1)
    assert series.coefficient_of(z2=1, z2b=1) == GaussianRational(1)
    assert len(series.terms) == 3


def test_evaluate_geometric_series():
    series = ps.parse_series("1/(1-z1)", CTX, 3)
    assert series == ps.parse_series("1 + z1 + z1^2 + z1^3", CTX, 3)


def test_evaluate_imaginary_unit():
    series = ps.parse_series("i*i", CTX, 2)
    assert series == ps.parse_series("-1", CTX, 2)


def test_evaluate_rational_coefficient():
    series = ps.parse_series("(3/2 + 1/2*i)*z1^2*wb", CTX, 4)
    assert series.coefficient_of(z1=2, wb=1) == GaussianRational(
        Fraction(3, 2), Fraction(1, 2)
    )


def test_evaluate_undeclared_variable():
    with pytest.raises(UnknownVariableError):
        ps.parse_series("q7", CTX, 3)


def test_evaluate_division_by_non_unit():
    with pytest.raises(NonUnitError):
        ps.parse_series("1/z1", CTX, 3)


def test_precedence_property(rng):
    names = list(CTX.names)
    for _ in range(20):
        a, b, c = (rng.choice(names) for _ in range(3))
        lhs = ps.parse_series(f"{a} + {b}*{c}", CTX, 4)
        rhs = ps.parse_series(f"{a} + ({b}*{c})", CTX, 4)
        assert lhs == rhs


# ----------------------------------------------------------------------
# round-trip property: render(ast) re-parses to the same AST value, and
# the printed series re-parses to the same series


@st.composite
def expression_asts(draw, depth=0):
    if depth >= 3:
        choices = ["number", "var", "i"]
    else:
        choices = ["number", "var", "i", "neg", "add", "sub", "mul", "pow", "div"]
    kind = draw(st.sampled_from(choices))
    if kind == "number":
        return Number(draw(st.integers(0, 9)))
    if kind == "var":
        return Variable(draw(st.sampled_from(list(CTX.names))))
    if kind == "i":
        return ImaginaryUnit()
    if kind == "neg":
        return Neg(draw(expression_asts(depth=depth + 1)))
    child = expression_asts(depth=depth + 1)
    if kind == "add":
        return Add(draw(child), draw(child))
    if kind == "sub":
        return Sub(draw(child), draw(child))
    if kind == "mul":
        return Mul(draw(child), draw(child))
    if kind == "pow":
        return Pow(draw(child), draw(st.integers(0, 3)))
    # division only by a nonzero integer literal keeps evaluation total
    return Div(draw(child), Number(draw(st.integers(1, 9))))


@settings(max_examples=80, deadline=None)
@given(expression_asts())
def test_render_parse_evaluate_round_trip(ast):
    text = render(ast)
    reparsed = parse(text)
    direct = evaluate(ast, CTX, 4)
    again = evaluate(reparsed, CTX, 4)
    assert direct == again
    # pretty-printed series re-parses to an equal series
    printed = str(direct)
    assert ps.parse_series(printed, CTX, 4) == direct
