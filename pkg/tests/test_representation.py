from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import Ternary, cochain_evaluator, coboundary_table, extension_constants, fi_scan, rho_function
from trilie.algebra import Space, ThreeLieAlgebra, is_three_lie
from trilie.errors import ShapeError, SpaceMismatchError
from trilie.exact import pairs
from trilie.representation import (
    Cochain,
    Representation,
    adjoint_representation,
    coboundary,
    rep_defects,
    semidirect_product,
)

coef = st.integers(-2, 2).map(Fraction)


@st.composite
def three_dim(draw, labels=("x1", "x2", "x3")):
    return ThreeLieAlgebra(list(labels), {(0, 1, 2): draw(st.lists(coef, min_size=3, max_size=3))}, name="g")


@st.composite
def representations(draw, dim_v=2, density=0.4):
    g = draw(three_dim())
    V = Space("V", tuple(f"w{i + 1}" for i in range(dim_v)))
    actions = {}
    for i, j in pairs(3):
        for k in range(dim_v):
            actions[(i, j, k)] = [draw(coef) if draw(st.floats(0, 1)) < density else 0 for _ in range(dim_v)]
    return Representation.from_actions(g, V, actions)


@st.composite
def cochains(draw, R, degree):
    n, m = R.algebra.dim, R.space.dim
    vals = st.lists(coef, min_size=m, max_size=m)
    return Cochain.from_function(R.algebra, R.space, degree, lambda slots, k: draw(vals))


def oracle_coboundary(R, c):
    n, m = R.algebra.dim, R.space.dim
    alpha = cochain_evaluator(c.table.to_fractions(), c.degree, n, m)
    rho = rho_function(R.rho.to_fractions(), n, m)
    return coboundary_table(Ternary(n, R.algebra.constants), rho, alpha, c.degree + 1, m)


def as_dict(c):
    T = c.table.to_fractions()
    P = len(pairs(c.algebra.dim))
    return {
        idx + (k,): [T[idx + (k, o)] for o in range(c.space.dim)]
        for idx in product(range(P), repeat=c.degree)
        for k in range(c.algebra.dim)
    }


def test_adjoint_of_example_is_a_representation(g4):
    R = adjoint_representation(g4)
    report = rep_defects(R)
    assert report.ok
    assert report.names() == ["first", "second"]
    assert is_three_lie(semidirect_product(R))


def test_adjoint_action(g4):
    R = adjoint_representation(g4)
    x1, x2, x3, x4 = g4.space
    assert R.act(x1, x2, x3) == x4
    assert R.act(x2, x1, x3) == -x4


def test_failing_representation_reports_witness(g4):
    V = Space("V", ("w1",))
    R = Representation.from_actions(g4, V, {(0, 1, 0): [1]})
    report = rep_defects(R)
    assert not report.ok
    bad = report.failures[0]
    assert len(bad.witness) == 5 and bad.witness[-1] == "w1"
    assert not is_three_lie(semidirect_product(R))


def test_rho_must_be_skew(g4):
    V = Space("V", ("w1",))
    rho = Representation.from_actions(g4, V, {(0, 1, 0): [1]}).rho
    with pytest.raises(ShapeError):
        Representation(g4, V, rho.with_entry((1, 0, 0, 0), 1))
    with pytest.raises(ShapeError):
        Representation.from_actions(g4, V, {(1, 0, 0): [1]})


@given(representations())
def test_representation_iff_semidirect_product(R):
    n, m = 3, R.space.dim
    semi = semidirect_product(R)
    T = R.rho.to_fractions()
    zero = lambda *_: [Fraction(0)] * m
    consts = extension_constants(
        R.algebra.constants, {}, n, m, lambda a, b, k: [T[a, b, o, k] for o in range(m)], zero, zero
    )
    assert semi.constants == {k: tuple(v) for k, v in consts.items()}
    assert rep_defects(R).ok == is_three_lie(semi).ok == (fi_scan(Ternary(n + m, consts)) is None)


def test_example_coboundary_matches_oracle(g4):
    R = adjoint_representation(g4)
    f = Cochain.from_function(g4, g4.space, 0, lambda slots, k: [k + 1, 0, -1, 2 * k])
    assert as_dict(coboundary(R, f)) == oracle_coboundary(R, f)


@given(st.data())
def test_coboundary_matches_oracle(data):
    R = data.draw(representations())
    degree = data.draw(st.sampled_from([0, 1]))
    c = data.draw(cochains(R, degree))
    assert as_dict(coboundary(R, c)) == oracle_coboundary(R, c)


@given(st.data())
def test_coboundary_degree_two_matches_oracle(data):
    g = data.draw(three_dim())
    R = adjoint_representation(g)
    c = data.draw(cochains(R, 2))
    assert as_dict(coboundary(R, c)) == oracle_coboundary(R, c)


@pytest.mark.parametrize("degree", [0, 1])
def test_square_zero_on_example(g4, degree):
    R = adjoint_representation(g4)
    c = Cochain.from_function(g4, g4.space, degree, lambda slots, k: [sum(slots) - k, k, 1, -sum(slots)])
    assert coboundary(R, coboundary(R, c)).is_zero()


@given(st.data())
def test_square_zero_on_certified_representations(data):
    R = data.draw(representations())
    if not rep_defects(R).ok:
        R = adjoint_representation(R.algebra)
    c = data.draw(cochains(R, data.draw(st.sampled_from([0, 1]))))
    assert coboundary(R, coboundary(R, c)).is_zero()


def test_cochain_evaluation_is_multilinear(g4):
    c = Cochain.from_function(g4, g4.space, 1, lambda slots, k: [slots[0], k, 0, 1])
    x1, x2, x3, x4 = g4.space
    assert c.evaluate([(x1, x2)], x3) == c.value((0,), 2)
    assert c.evaluate([(x2, x1)], x3) == -c.value((0,), 2)
    assert c.evaluate([(x1, x1 + x2 * 2)], x3 - x4) == (c.value((0,), 2) - c.value((0,), 3)) * 2


def test_cochain_space_checks(g4, h3):
    R = adjoint_representation(g4)
    c = Cochain(h3, h3.space, 0)
    with pytest.raises(SpaceMismatchError):
        coboundary(R, c)
    with pytest.raises(ShapeError):
        Cochain(g4, g4.space, 1, c.table)
