import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_h
from trilie.algebra import ThreeLieAlgebra, is_three_lie
from trilie.dgla import (
    GradedCochain,
    ad_power,
    cochain_to_datum,
    cochain_to_map,
    datum_to_cochain,
    dgla_differential,
    gauge_transform,
    is_restricted,
    map_to_cochain,
    mc_defect,
    nr_bracket,
    nr_compose,
    structure_cochain,
    unshuffles,
)
from trilie.errors import DomainError, SpaceMismatchError, UnsupportedDegreeError
from trilie.extension import ExtensionDatum, extension_defects
from trilie.representation import adjoint_representation, coboundary
from trilie.sampling import (
    certified_data,
    random_datum,
    random_graded_cochain,
    random_linear_map,
    random_restricted_cochain,
    random_three_dim_algebra,
)

seeds = st.integers(0, 2**32 - 1)


def three_dim(rng):
    return random_three_dim_algebra(rng, ("e1", "e2", "e3"), "A")


def graded_sign(p, q):
    return -1 if (p * q) % 2 else 1


# --- unshuffles --------------------------------------------------------------


@pytest.mark.parametrize("i, n", [(0, 3), (1, 3), (2, 4), (3, 5)])
def test_unshuffle_count_and_shape(i, n):
    us = unshuffles(i, n)
    assert len(us) == comb(n, i)
    for u in us:
        head, tail = u.perm[:i], u.perm[i:]
        assert list(head) == sorted(head) and list(tail) == sorted(tail)


def test_unshuffle_signs():
    assert [(u.perm, u.sign) for u in unshuffles(1, 3)] == [((0, 1, 2), 1), ((1, 0, 2), -1), ((2, 0, 1), 1)]


# --- the bracket -----------------------------------------------------------


def test_structure_cochain_squares_to_zero(g4):
    mu = structure_cochain(g4)
    assert nr_bracket(mu, mu).is_zero()


@given(seeds)
def test_structure_square_vanishes_iff_fi(seed):
    rng = random.Random(seed)
    consts = {t: [rng.randint(-1, 1) if rng.random() < 0.3 else 0 for _ in range(4)]
              for t in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]}
    A = ThreeLieAlgebra(["e1", "e2", "e3", "e4"], consts)
    mu = structure_cochain(A)
    assert nr_bracket(mu, mu).is_zero() == is_three_lie(A).ok


def test_degree_limit(h3):
    a = random_graded_cochain(random.Random(0), h3, 2)
    b = random_graded_cochain(random.Random(1), h3, 3)
    with pytest.raises(UnsupportedDegreeError):
        nr_compose(a, b)


def test_ambient_mismatch(g4, h3):
    with pytest.raises(SpaceMismatchError):
        nr_bracket(structure_cochain(g4), structure_cochain(h3))


@given(seeds, st.sampled_from([0, 1]), st.sampled_from([0, 1]))
def test_graded_antisymmetry(seed, p, q):
    rng = random.Random(seed)
    A = three_dim(rng)
    a, b = random_graded_cochain(rng, A, p), random_graded_cochain(rng, A, q)
    assert (nr_bracket(a, b) + nr_bracket(b, a) * graded_sign(p, q)).is_zero()


@given(seeds, st.tuples(*[st.sampled_from([0, 1])] * 3))
def test_graded_jacobi(seed, degrees):
    rng = random.Random(seed)
    A = three_dim(rng)
    p, q, r = degrees
    a, b, c = (random_graded_cochain(rng, A, d, density=0.6) for d in degrees)
    total = (
        nr_bracket(a, nr_bracket(b, c)) * graded_sign(p, r)
        + nr_bracket(b, nr_bracket(c, a)) * graded_sign(q, p)
        + nr_bracket(c, nr_bracket(a, b)) * graded_sign(r, q)
    )
    assert total.is_zero()


@pytest.mark.parametrize("p", [0, 1, 2])
def test_consistency_with_coboundary(g4, p):
    rng = random.Random(100 + p)
    R = adjoint_representation(g4)
    for _ in range(3):
        a = random_graded_cochain(rng, g4, p)
        assert nr_bracket(structure_cochain(g4), a) == GradedCochain.of(coboundary(R, a)) * (-1) ** p


@given(seeds, st.sampled_from([0, 1, 2]))
def test_consistency_random_algebra(seed, p):
    rng = random.Random(seed)
    A = three_dim(rng)
    a = random_graded_cochain(rng, A, p)
    assert dgla_differential(a) == GradedCochain.of(coboundary(adjoint_representation(A), a)) * (-1) ** p


# --- restricted subalgebra ---------------------------------------------------


@given(seeds, st.sampled_from([0, 1]), st.sampled_from([0, 1]))
def test_restricted_closure(seed, p, q):
    rng = random.Random(seed)
    g, h = three_dim(rng), small_h()
    a = random_restricted_cochain(rng, g, h, p)
    b = random_restricted_cochain(rng, g, h, q)
    assert is_restricted(a, 3) and is_restricted(b, 3)
    assert is_restricted(nr_bracket(a, b), 3)
    assert is_restricted(dgla_differential(a), 3)


@given(seeds)
def test_differential_squares_to_zero(seed):
    rng = random.Random(seed)
    c = random_restricted_cochain(rng, three_dim(rng), small_h(), 1)
    assert dgla_differential(dgla_differential(c)).is_zero()


def test_unrestricted_cochain_is_rejected(g4, h3):
    D = ExtensionDatum.zero(g4, h3)
    c = datum_to_cochain(D)
    bad = GradedCochain(c.ambient, 1, c.table.with_entry((0, 0, 0), 1))
    assert not is_restricted(bad, 4)
    with pytest.raises(DomainError):
        cochain_to_datum(bad, g4, h3)
    lopsided = GradedCochain(c.ambient, 1, c.table.with_entry((0, 2, 4), 1))
    assert is_restricted(lopsided, 4)
    with pytest.raises(DomainError, match="skew"):
        cochain_to_datum(lopsided, g4, h3)


# --- Maurer-Cartan and extension data -----------------------------------------


def test_example_datum_round_trip(example1_datum):
    c = datum_to_cochain(example1_datum)
    assert is_restricted(c, 4)
    assert cochain_to_datum(c, example1_datum.g, example1_datum.h) == example1_datum
    assert mc_defect(c).is_zero()


@given(seeds, st.sampled_from([1.0, 0.1, 0.04]))
def test_round_trip_and_mc_iff_extension(seed, density):
    rng = random.Random(seed)
    g = random_three_dim_algebra(rng, ("x1", "x2", "x3"), "g")
    h = random_three_dim_algebra(rng, ("v1", "v2", "v3"), "h")
    D = random_datum(rng, g, h, density=density)
    c = datum_to_cochain(D)
    assert cochain_to_datum(c, g, h) == D
    assert mc_defect(c).is_zero() == extension_defects(D).ok


@given(seeds)
def test_certified_data_are_mc(seed):
    (D,) = certified_data(random.Random(seed), 1)
    assert mc_defect(datum_to_cochain(D)).is_zero()


def test_mc_requires_degree_one(g4):
    with pytest.raises(DomainError):
        mc_defect(random_graded_cochain(random.Random(0), g4, 0))


# --- gauge action ------------------------------------------------------------


def test_map_cochain_round_trip(g4, h3):
    xi = random_linear_map(random.Random(3), g4.space, h3.space)
    x = map_to_cochain(xi, g4, h3)
    assert is_restricted(x, 4)
    assert cochain_to_map(x, g4, h3) == xi


@given(seeds)
def test_gauge_preserves_mc_and_truncates(seed):
    rng = random.Random(seed)
    (D,) = certified_data(rng, 1)
    c = datum_to_cochain(D)
    x = map_to_cochain(random_linear_map(rng, D.g.space, D.h.space), D.g, D.h)
    moved = gauge_transform(x, c, 3)
    assert is_restricted(moved, 3)
    assert mc_defect(moved).is_zero()
    assert ad_power(x, c, 3).is_zero()
    assert ad_power(x, dgla_differential(x), 3).is_zero()


def test_gauge_on_example(example1_datum):
    D = example1_datum
    rng = random.Random(7)
    x = map_to_cochain(random_linear_map(rng, D.g.space, D.h.space), D.g, D.h)
    moved = gauge_transform(x, datum_to_cochain(D), 4)
    assert mc_defect(moved).is_zero()
    assert extension_defects(cochain_to_datum(moved, D.g, D.h)).ok


def test_gauge_by_zero_is_identity(example1_datum):
    D = example1_datum
    c = datum_to_cochain(D)
    x = GradedCochain(c.ambient, 0)
    assert gauge_transform(x, c, 4) == c


def test_gauge_argument_checks(g4, h3):
    c = datum_to_cochain(ExtensionDatum.zero(g4, h3))
    x = GradedCochain(c.ambient, 0)
    with pytest.raises(DomainError):
        gauge_transform(c, x, 4)
    full = GradedCochain(c.ambient, 0, x.table.with_entry((0, 0), 1))
    with pytest.raises(DomainError):
        gauge_transform(full, c, 4)
