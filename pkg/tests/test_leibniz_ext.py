import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import Ternary, datum_functions, extension_constants, fundamental_table
from trilie.algebra import is_leibniz
from trilie.errors import PreconditionError
from trilie.exact import QArray
from trilie.extension import ExtensionDatum
from trilie.leibniz_ext import (
    LEIBNIZ_CONDITIONS,
    assemble_leibniz_extension,
    build_l_r_varpi,
    fundamental_oracle_check,
    leibniz_extension_defects,
    w_bracket,
    w_space,
)
from trilie.problem import load_problem
from trilie.sampling import certified_data, random_datum, random_three_dim_algebra
from trilie.tasks import corpus_dir

seeds = st.integers(0, 2**32 - 1)


def family9(r=(1, 2, 3)):
    return load_problem(corpus_dir() / "example2_family9.tlx", dict(zip(("r1", "r2", "r3"), r))).extensions["E"]


def target_label(a, b):
    """Where the pair ``a ^ b`` of g + h lands in W + wedge2(g)."""
    if a.startswith("x") and b.startswith("x"):
        return f"{a}^{b}"
    if a.startswith("x"):
        return f"{a}(x){b}"
    return f"{a}^{b}"


def oracle_assembled(D):
    """Assembled table keyed by labels, from the fundamental bracket of the brute-force extension."""
    n, m = D.g.dim, D.h.dim
    rho, nu, omega = datum_functions(D)
    consts = extension_constants(D.g.constants, D.h.constants, n, m, rho, nu, omega)
    table = fundamental_table(Ternary(n + m, consts))
    labels = D.g.space.basis + D.h.space.basis
    names = [target_label(labels[i], labels[j]) for i, j in combinations(range(n + m), 2)]
    return {
        (names[p], names[q]): {names[r]: c for r, c in enumerate(table[p][q]) if c}
        for p in range(len(names))
        for q in range(len(names))
    }


def assembled_by_label(L):
    T = L.tensor.to_fractions()
    B = L.space.basis
    return {
        (B[p], B[q]): {B[r]: T[p, q, r] for r in range(len(B)) if T[p, q, r]}
        for p in range(len(B))
        for q in range(len(B))
    }


def test_fiber_basis():
    D = family9()
    assert w_space(D).basis[:4] == ("v1^v2", "v1^v3", "v2^v3", "x1(x)v1")
    assert w_space(D).dim == 3 + 9


def test_family_nine_matches_fundamental_algebra():
    D = family9()
    E = build_l_r_varpi(D)
    assert leibniz_extension_defects(E).ok
    assert is_leibniz(w_bracket(D))
    assert fundamental_oracle_check(D)
    assert assembled_by_label(assemble_leibniz_extension(E)) == oracle_assembled(D)


def test_example_one_matches_fundamental_algebra(example1_datum):
    D = example1_datum
    assert fundamental_oracle_check(D)
    assert is_leibniz(w_bracket(D))
    E = build_l_r_varpi(D)
    report = leibniz_extension_defects(E)
    assert report.names() == list(LEIBNIZ_CONDITIONS) + ["base", "fiber"]
    assert report.ok
    assert assembled_by_label(assemble_leibniz_extension(E)) == oracle_assembled(D)


def test_uncertified_datum_is_refused():
    rng = random.Random(4)
    g = random_three_dim_algebra(rng, ("x1", "x2", "x3"), "g")
    h = random_three_dim_algebra(rng, ("v1", "v2", "v3"), "h")
    D = random_datum(rng, g, h)
    for fn in (w_bracket, build_l_r_varpi, fundamental_oracle_check):
        with pytest.raises(PreconditionError):
            fn(D)


@settings(max_examples=15)
@given(seeds)
def test_random_certified_data(seed):
    (D,) = certified_data(random.Random(seed), 1)
    assert fundamental_oracle_check(D)
    assert is_leibniz(w_bracket(D))
    assert assembled_by_label(assemble_leibniz_extension(build_l_r_varpi(D))) == oracle_assembled(D)


@given(seeds, st.sampled_from(["left", "right", "varpi"]))
def test_conditions_iff_assembled_is_leibniz(seed, which):
    rng = random.Random(seed)
    (D,) = certified_data(rng, 1)
    E = build_l_r_varpi(D)
    table = getattr(E, which)
    idx = tuple(rng.randrange(s) for s in table.shape)
    changed = table.with_entry(idx, table[idx] + rng.choice([-1, 1]))
    F = type(E)(**{**E.__dict__, which: changed})
    assert leibniz_extension_defects(F).ok == is_leibniz(assemble_leibniz_extension(F)).ok


def test_zero_cocycle_breaks_family_nine():
    E = build_l_r_varpi(family9())
    F = E.with_varpi(QArray.zeros(E.varpi.shape))
    report = leibniz_extension_defects(F)
    assert not report.ok
    assert not is_leibniz(assemble_leibniz_extension(F))


def test_trivial_datum(g4, h3):
    D = ExtensionDatum.zero(g4, h3)
    assert fundamental_oracle_check(D)
    assert build_l_r_varpi(D).varpi.is_zero()
