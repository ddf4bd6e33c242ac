from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trilie.errors import ShapeError
from trilie.exact import QArray, as_scalar, is_skew, pair_index, pairs, qsum, wedge_coords, wedge_tensor

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def test_scalars_normalize():
    assert as_scalar("3/6") == Fraction(1, 2)
    assert as_scalar(2) == Fraction(2)
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_common_denominator_round_trip():
    a = QArray.from_values([[Fraction(1, 2), Fraction(-2, 3)], [0, 5]])
    assert a.tolist() == [[Fraction(1, 2), Fraction(-2, 3)], [Fraction(0), Fraction(5)]]
    assert a.den == 6


def test_overflow_switches_to_python_ints():
    big = QArray.from_values([2**61, 2**61])
    total = QArray.einsum("i,i->", big, big)
    assert total.tolist() == 2**123
    assert (big + big).tolist() == [2**62, 2**62]


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        QArray.zeros((2,)) + QArray.zeros((3,))


def test_canonical_pairs():
    assert pairs(3) == ((0, 1), (0, 2), (1, 2))
    assert pair_index(4)[(1, 3)] == 4
    assert wedge_coords(2, 0, 3) == (-1, 1)
    assert wedge_coords(1, 1, 3) is None


def test_wedge_tensor_is_skew():
    W = wedge_tensor(4)
    assert W.shape == (4, 4, 6)
    assert is_skew(W, (0, 1))


@given(st.lists(fractions, min_size=6, max_size=6), st.lists(fractions, min_size=6, max_size=6), fractions)
def test_arithmetic_matches_fractions(xs, ys, s):
    a, b = QArray.from_values(xs), QArray.from_values(ys)
    assert (a + b).tolist() == [x + y for x, y in zip(xs, ys)]
    assert (a - b).tolist() == [x - y for x, y in zip(xs, ys)]
    assert (a * s).tolist() == [x * s for x in xs]
    assert (a * s == b * s) == (s == 0 or xs == ys)


@given(st.lists(st.lists(fractions, min_size=3, max_size=3), min_size=2, max_size=2),
       st.lists(st.lists(fractions, min_size=2, max_size=2), min_size=3, max_size=3))
def test_einsum_is_exact_matrix_product(A, B):
    got = QArray.einsum("ij,jk->ik", QArray.from_values(A), QArray.from_values(B)).tolist()
    want = [[sum((A[i][j] * B[j][k] for j in range(3)), Fraction(0)) for k in range(2)] for i in range(2)]
    assert got == want


def test_qsum_of_nothing_needs_shape():
    assert qsum([], shape=(2,)).is_zero()
    assert np.array_equal(qsum([QArray.from_values([1, 2])] * 3).num, np.array([3, 6]))
