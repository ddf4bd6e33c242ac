from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from trilie.algebra import ThreeLieAlgebra
from trilie.problem import load_problem
from trilie.tasks import corpus_dir

settings.register_profile("trilie", deadline=None, max_examples=40)
settings.load_profile("trilie")

DATA = Path(__file__).parent / "data"
ONES = {f"r{i}": 1 for i in range(1, 7)}

# simple 4-dimensional algebra: [x_i, x_j, x_k] = the remaining basis vector, signs as listed
EXAMPLE1_BRACKETS = {
    ("x1", "x2", "x3"): "x4",
    ("x1", "x2", "x4"): "x3",
    ("x1", "x3", "x4"): "x2",
    ("x2", "x3", "x4"): "x1",
}


def example1_algebra(**changes) -> ThreeLieAlgebra:
    """The 4-dimensional algebra, with entries replaced via keys like ``"x1,x2,x3"``."""
    brackets = dict(EXAMPLE1_BRACKETS)
    brackets.update({tuple(k.split(",")): v for k, v in changes.items()})
    return ThreeLieAlgebra.from_brackets(["x1", "x2", "x3", "x4"], brackets, name="g")


def small_h() -> ThreeLieAlgebra:
    return ThreeLieAlgebra.from_brackets(["v1", "v2", "v3"], {("v1", "v2", "v3"): "v1"}, name="h")


@pytest.fixture
def g4():
    return example1_algebra()


@pytest.fixture
def h3():
    return small_h()


@pytest.fixture
def example1_problem():
    return load_problem(corpus_dir() / "example1.tlx", ONES)


@pytest.fixture
def example1_datum(example1_problem):
    return example1_problem.extensions["E"]


def frac(x) -> Fraction:
    return Fraction(x)
