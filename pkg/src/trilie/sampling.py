"""Seeded generators for randomized checks.

Everything takes a :class:`random.Random` so callers control reproducibility.
Coefficients are integers drawn from ``lo..hi``; ``density`` is the chance an
entry is drawn at all (otherwise it stays zero).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator, Sequence

from .algebra import LinearMap, Space, ThreeLieAlgebra
from .dgla import GradedCochain, ambient_of, cochain_to_datum, datum_to_cochain, gauge_transform, map_to_cochain
from .exact import QArray, pairs
from .extension import ExtensionDatum, extension_defects
from .representation import Cochain


def _entry(rng: random.Random, lo: int, hi: int, density: float) -> Fraction:
    if rng.random() >= density:
        return Fraction(0)
    return Fraction(rng.randint(lo, hi))


def random_linear_map(
    rng: random.Random, domain: Space, codomain: Space, lo: int = -2, hi: int = 2, density: float = 1.0
) -> LinearMap:
    rows = [[_entry(rng, lo, hi, density) for _ in range(domain.dim)] for _ in range(codomain.dim)]
    matrix = QArray.from_values(rows) if domain.dim and codomain.dim else QArray.zeros((codomain.dim, domain.dim))
    return LinearMap(domain, codomain, matrix)


def random_three_dim_algebra(
    rng: random.Random, labels: Sequence[str] = ("e1", "e2", "e3"), name: str = "g", lo: int = -2, hi: int = 2
) -> ThreeLieAlgebra:
    """A random bracket on a 3-dimensional space; the identity holds for every choice."""
    if len(labels) != 3:
        raise ValueError("expected three basis labels")
    coeffs = tuple(Fraction(rng.randint(lo, hi)) for _ in range(3))
    return ThreeLieAlgebra(list(labels), {(0, 1, 2): coeffs}, name=name)


def random_datum(
    rng: random.Random, g: ThreeLieAlgebra, h: ThreeLieAlgebra, lo: int = -2, hi: int = 2, density: float = 1.0
) -> ExtensionDatum:
    """An uncertified datum with independent entries on canonical index tuples."""
    n, m = g.dim, h.dim

    def vec() -> list[Fraction]:
        return [_entry(rng, lo, hi, density) for _ in range(m)]

    rho = {(a, b, k): vec() for a, b in pairs(n) for k in range(m)}
    nu = {(a, i, j): vec() for a in range(n) for i, j in pairs(m)}
    omega = {(a, b, c): vec() for a in range(n) for b in range(a + 1, n) for c in range(b + 1, n)}
    return ExtensionDatum.from_tables(g, h, rho=rho, nu=nu, omega=omega)


def random_cochain(
    rng: random.Random, algebra: ThreeLieAlgebra, space: Space, degree: int, lo: int = -2, hi: int = 2,
    density: float = 1.0,
) -> Cochain:
    return Cochain.from_function(algebra, space, degree, lambda slots, k: [_entry(rng, lo, hi, density) for _ in range(space.dim)])


def random_graded_cochain(
    rng: random.Random, ambient: ThreeLieAlgebra, degree: int, lo: int = -2, hi: int = 2, density: float = 1.0
) -> GradedCochain:
    return GradedCochain.of(random_cochain(rng, ambient, ambient.space, degree, lo, hi, density))


def random_restricted_cochain(
    rng: random.Random, g: ThreeLieAlgebra, h: ThreeLieAlgebra, degree: int, lo: int = -2, hi: int = 2,
    density: float = 1.0,
) -> GradedCochain:
    """Fiber-valued cochain on ``g + h`` vanishing when every argument lies in the fiber."""
    ambient = ambient_of(ExtensionDatum.zero(g, h))
    n, N = g.dim, ambient.dim
    fiber_pair = [i >= n for i, _ in pairs(N)]

    def value(slots, k):
        zero = [Fraction(0)] * N
        if all(fiber_pair[s] for s in slots) and k >= n:
            return zero
        return zero[:n] + [_entry(rng, lo, hi, density) for _ in range(N - n)]

    return GradedCochain.of(Cochain.from_function(ambient, ambient.space, degree, value))


def gauge_orbit_datum(xi: LinearMap, D: ExtensionDatum) -> ExtensionDatum:
    """The datum whose cochain is the gauge transform of ``D``'s cochain by ``xi``."""
    c = datum_to_cochain(D)
    moved = gauge_transform(map_to_cochain(xi, D.g, D.h), c, D.g.dim)
    return cochain_to_datum(moved, D.g, D.h)


def _in_range(D: ExtensionDatum, lo: int, hi: int) -> bool:
    for table in (D.rho, D.nu, D.omega):
        for value in table.to_fractions().flat:
            if value.denominator != 1 or not lo <= value <= hi:
                return False
    return True


def perturb(rng: random.Random, D: ExtensionDatum, lo: int = -2, hi: int = 2) -> ExtensionDatum:
    """Change one canonical entry of ``rho``, ``nu`` or ``omega`` to a different value in ``lo..hi``."""
    n, m = D.g.dim, D.h.dim
    R, Nu, O = D.rho.to_fractions(), D.nu.to_fractions(), D.omega.to_fractions()
    rho = {(a, b, k): list(R[a, b, :, k]) for a, b in pairs(n) for k in range(m)}
    nu = {(a, i, j): list(Nu[a, i, j, :]) for a in range(n) for i, j in pairs(m)}
    omega = {(a, b, c): list(O[a, b, c, :]) for a in range(n) for b in range(a + 1, n) for c in range(b + 1, n)}
    slots = [(t, key) for t, table in enumerate((rho, nu, omega)) for key in sorted(table)]
    if not slots or m == 0:
        return D
    t, key = rng.choice(slots)
    target = (rho, nu, omega)[t][key]
    out = rng.randrange(m)
    choices = [Fraction(v) for v in range(lo, hi + 1) if v != target[out]]
    target[out] = rng.choice(choices)
    return ExtensionDatum.from_tables(D.g, D.h, rho=rho, nu=nu, omega=omega)


def certified_data(
    rng: random.Random, count: int, pool: Sequence[ExtensionDatum] = (), lo: int = -2, hi: int = 2
) -> Iterator[ExtensionDatum]:
    """Data passing every extension condition with integer entries in ``lo..hi``.

    Draws alternate between gauge moves of a pool member and gauge moves of
    the trivial datum over random 3-dimensional algebras.
    """
    made = attempts = 0
    while made < count:
        attempts += 1
        if attempts > 200 * (count + 1):
            raise RuntimeError("could not draw enough certified data in range")
        if pool and attempts % 2:
            base = rng.choice(pool)
        else:
            g = random_three_dim_algebra(rng, ("x1", "x2", "x3"), "g", lo, hi)
            h = random_three_dim_algebra(rng, ("v1", "v2", "v3"), "h", lo, hi)
            base = ExtensionDatum.zero(g, h)
        xi = random_linear_map(rng, base.g.space, base.h.space, -1, 1, density=0.5)
        D = gauge_orbit_datum(xi, base)
        if _in_range(D, lo, hi) and extension_defects(D).ok:
            made += 1
            yield D


def mixed_data(
    rng: random.Random, count: int = 200, pool: Sequence[ExtensionDatum] = (), lo: int = -2, hi: int = 2
) -> list[ExtensionDatum]:
    """Random data on two 3-dimensional algebras, split into four equal kinds.

    Dense random, sparse random, certified, and certified with one entry
    changed.  Dense random data almost never satisfy the conditions, so the
    certified halves keep both verdicts represented.
    """
    quarter = count // 4
    sizes = [count - 3 * quarter, quarter, quarter, quarter]
    out: list[ExtensionDatum] = []

    def algebras():
        return (
            random_three_dim_algebra(rng, ("x1", "x2", "x3"), "g", lo, hi),
            random_three_dim_algebra(rng, ("v1", "v2", "v3"), "h", lo, hi),
        )

    for _ in range(sizes[0]):
        out.append(random_datum(rng, *algebras(), lo, hi))
    for _ in range(sizes[1]):
        out.append(random_datum(rng, *algebras(), lo, hi, density=0.15))
    valid = list(certified_data(rng, sizes[2] + sizes[3], pool, lo, hi))
    out.extend(valid[: sizes[2]])
    out.extend(perturb(rng, D, lo, hi) for D in valid[sizes[2]:])
    return out
