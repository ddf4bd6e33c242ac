from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trilie.errors import ExprEvalError, ExprSyntaxError
from trilie.expr import BinOp, Name, Num, evaluate, evaluate_linear, names, parse_expr


def test_half_is_one_literal():
    assert parse_expr("1/2") == Num(Fraction(1, 2))
    assert evaluate(parse_expr("1/2")) == Fraction(1, 2)


def test_product_quotient():
    assert evaluate(parse_expr("r1*r4/r2"), {"r1": 1, "r4": 2, "r2": 3}) == Fraction(2, 3)


@pytest.mark.parametrize("r2", [0, 1, Fraction(-7, 3)])
def test_division_by_zero(r2):
    with pytest.raises(ExprEvalError, match="division by zero"):
        evaluate(parse_expr("r1/(r2-r2)"), {"r1": 1, "r2": r2})


@pytest.mark.parametrize(
    "text, pos",
    [("1 +", 3), ("(r1", 3), ("r1 $ 2", 3), ("2 r1", 2), ("", 0)],
)
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)


def test_whitespace_and_longest_identifiers():
    assert parse_expr(" r12 ") == Name("r12")
    assert parse_expr("r1 - - r2") == parse_expr("r1--r2")
    assert names(parse_expr("a*(b1+c)/2")) == {"a", "b1", "c"}


def test_precedence_and_associativity():
    assert evaluate(parse_expr("2-3-4")) == -5
    assert evaluate(parse_expr("12/2/3")) == 2
    assert evaluate(parse_expr("1+2*3")) == 7
    assert evaluate(parse_expr("-2*-3")) == 6
    assert isinstance(parse_expr("a/b"), BinOp)


def test_unknown_parameter():
    with pytest.raises(ExprEvalError, match="unknown"):
        evaluate(parse_expr("r9"), {"r1": 1})


def test_linear_combinations():
    basis = ("v1", "v2", "v3")
    params = {"r1": Fraction(2), "r3": Fraction(-1)}
    assert evaluate_linear(parse_expr("-r3*v1 + r1/4*v2"), params, basis) == [1, Fraction(1, 2), 0]
    assert evaluate_linear(parse_expr("(v1 - v3)*3"), params, basis) == [3, 0, -3]
    for bad in ("v1*v2", "1/v1", "v1 + 1"):
        with pytest.raises(ExprEvalError):
            evaluate_linear(parse_expr(bad), params, basis)


small = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@given(small, small, small)
def test_evaluation_agrees_with_python(a, b, c):
    env = {"a": a, "b": b, "c": c}
    assert evaluate(parse_expr("a*b - c + (a - b)*c"), env) == a * b - c + (a - b) * c
    if b:
        assert evaluate(parse_expr("a/b + 3/7"), env) == a / b + Fraction(3, 7)
