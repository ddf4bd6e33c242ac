"""Graded bracket on cochains of ``g + h``, Maurer-Cartan elements and gauge action.

Every cochain here is valued in the ambient algebra itself.  The composition
product sums over unshuffles of the wedge slots; both terms of the bracket
are evaluated as dense contractions over canonical pair indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .algebra import LinearMap, ThreeLieAlgebra
from .errors import DomainError, PreconditionError, SpaceMismatchError, UnsupportedDegreeError
from .exact import QArray, is_skew, pair_split, pairs, wedge_tensor
from .extension import ExtensionDatum, extension_bracket
from .representation import SLOT_LETTERS, Cochain, canonical_pair_tensor

MAX_TOTAL_DEGREE = 4
MAX_GAUGE_TERMS = 16


class GradedCochain(Cochain):
    """Cochain valued in its own ambient algebra."""

    def __init__(self, ambient: ThreeLieAlgebra, degree: int, table: QArray | None = None):
        super().__init__(ambient, ambient.space, degree, table)

    @property
    def ambient(self) -> ThreeLieAlgebra:
        return self.algebra

    def _like(self, table: QArray, degree: int | None = None) -> GradedCochain:
        return GradedCochain(self.algebra, self.degree if degree is None else degree, table)

    @classmethod
    def of(cls, c: Cochain) -> GradedCochain:
        if c.space != c.algebra.space:
            raise SpaceMismatchError("a graded cochain must take values in its ambient algebra")
        return cls(c.algebra, c.degree, c.table)


@dataclass(frozen=True)
class Unshuffle:
    """Permutation increasing on its first ``split`` and last ``n - split`` positions."""

    split: int
    perm: tuple[int, ...]
    sign: int


@lru_cache(maxsize=None)
def unshuffles(i: int, n: int) -> tuple[Unshuffle, ...]:
    """All ``(i, n - i)``-unshuffles of ``0..n-1`` in lexicographic order of the first block."""
    out = []
    for head in combinations(range(n), i):
        tail = tuple(k for k in range(n) if k not in head)
        perm = head + tail
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        out.append(Unshuffle(i, perm, -1 if inversions % 2 else 1))
    return tuple(out)


def structure_cochain(A: ThreeLieAlgebra) -> GradedCochain:
    """The bracket of ``A`` as a degree-1 cochain."""
    return GradedCochain(A, 1, canonical_pair_tensor(A.tensor))


def _same_ambient(a: Cochain, b: Cochain) -> None:
    if a.algebra != b.algebra or a.space != b.space or a.space != a.algebra.space:
        raise SpaceMismatchError("cochains live on different ambient algebras")


@lru_cache(maxsize=64)
def _insertions(n: int) -> tuple[QArray, QArray, QArray, QArray]:
    """Selectors for pair factors and the wedge-insertion tensors.

    ``left[p, m, r]`` is the coordinate of pair ``r`` in ``e_m ^ y_p`` and
    ``right[p, m, r]`` that of ``x_p ^ e_m``.
    """
    first, second = pair_split(n)
    W = wedge_tensor(n)
    left = QArray.einsum("py,myr->pmr", second, W)
    right = QArray.einsum("px,xmr->pmr", first, W)
    return first, second, left, right


def nr_compose(a: Cochain, b: Cochain) -> GradedCochain:
    """Composition product ``a o b`` of degree ``deg a + deg b``."""
    _same_ambient(a, b)
    p, q = a.degree, b.degree
    if p + q > MAX_TOTAL_DEGREE:
        raise UnsupportedDegreeError(f"total degree {p + q} exceeds {MAX_TOTAL_DEGREE}")
    A = a.algebra
    n = A.dim
    shape = (len(pairs(n)),) * (p + q) + (n, n)
    if n < 2:
        return GradedCochain(A, p + q, QArray.zeros(shape))
    first, second, left, right = _insertions(n)
    slots = SLOT_LETTERS[: p + q]
    out = f"{slots}zo"
    total = QArray.zeros(shape)

    for k in range(p):
        j = k + q
        sj, tail = slots[j], slots[j + 1:]
        for u in unshuffles(k, k + q):
            moved = "".join(slots[i] for i in u.perm)
            head, inner = moved[:k], moved[k:]
            sign = u.sign * (-1 if (k * q) % 2 else 1)
            t = QArray.einsum(
                f"{sj}x,{inner}xm,{sj}mr,{head}r{tail}zo->{out}", first, b.table, left, a.table
            ) + QArray.einsum(
                f"{sj}y,{inner}ym,{sj}mr,{head}r{tail}zo->{out}", second, b.table, right, a.table
            )
            total = total + (t if sign > 0 else -t)

    for u in unshuffles(p, p + q):
        moved = "".join(slots[i] for i in u.perm)
        head, inner = moved[:p], moved[p:]
        sign = u.sign * (-1 if (p * q) % 2 else 1)
        t = QArray.einsum(f"{inner}zm,{head}mo->{out}", b.table, a.table)
        total = total + (t if sign > 0 else -t)
    return GradedCochain(A, p + q, total)


def nr_bracket(a: Cochain, b: Cochain) -> GradedCochain:
    """Graded commutator ``a o b - (-1)^(pq) b o a``."""
    ab, ba = nr_compose(a, b), nr_compose(b, a)
    return ab + ba if (a.degree * b.degree) % 2 else ab - ba


def dgla_differential(c: Cochain) -> GradedCochain:
    """Bracket with the structure cochain of the ambient algebra."""
    return nr_bracket(structure_cochain(c.algebra), c)


# ---------------------------------------------------------------------------
# the restricted subalgebra and extension data
# ---------------------------------------------------------------------------


def ambient_of(D: ExtensionDatum) -> ThreeLieAlgebra:
    """``g + h`` with the plain sum of the two brackets."""
    return extension_bracket(ExtensionDatum.zero(D.g, D.h))


def is_restricted(c: Cochain, n_base: int) -> bool:
    """Values lie in the fiber and vanish when every argument lies in the fiber.

    The first ``n_base`` basis vectors of the ambient span the base, the rest
    span the fiber.
    """
    if c.space != c.algebra.space:
        return False
    N = c.algebra.dim
    num = c.table.num
    if num[..., :n_base].any():
        return False
    fiber_pairs = [r for r, (i, _) in enumerate(pairs(N)) if i >= n_base]
    for axis in range(c.degree):
        num = num.take(fiber_pairs, axis=axis)
    return not num.take(list(range(n_base, N)), axis=c.degree).any()


def datum_to_cochain(D: ExtensionDatum) -> GradedCochain:
    """The degree-1 cochain collecting ``rho``, ``nu`` and ``omega``."""
    ambient = ambient_of(D)
    full = extension_bracket(D).tensor - ambient.tensor
    return GradedCochain(ambient, 1, canonical_pair_tensor(full))


def cochain_to_datum(c: Cochain, g: ThreeLieAlgebra, h: ThreeLieAlgebra) -> ExtensionDatum:
    """Inverse of :func:`datum_to_cochain` on restricted, fully skew cochains."""
    n, m = g.dim, h.dim
    ambient = extension_bracket(ExtensionDatum.zero(g, h))
    if c.algebra != ambient:
        raise SpaceMismatchError("cochain is not defined on the sum of the given algebras")
    if c.degree != 1:
        raise DomainError("only degree-1 cochains correspond to extension data")
    if not is_restricted(c, n):
        raise DomainError("cochain leaves the restricted subspace")
    N = n + m
    full = QArray.einsum("ijp,pko->ijko", wedge_tensor(N), c.table) if N >= 2 else QArray.zeros((N,) * 4)
    if not is_skew(full, (0, 1, 2)):
        raise DomainError("cochain is not skew-symmetric in all three arguments")
    fiber = full[..., n:]
    rho = fiber[:n, :n, n:].transpose(0, 1, 3, 2)
    nu = fiber[:n, n:, n:]
    omega = fiber[:n, :n, :n]
    return ExtensionDatum(g, h, rho, nu, omega)


def map_to_cochain(xi: LinearMap, g: ThreeLieAlgebra, h: ThreeLieAlgebra) -> GradedCochain:
    """A map ``g -> h`` as a degree-0 cochain on ``g + h`` vanishing on h."""
    if xi.domain != g.space or xi.codomain != h.space:
        raise SpaceMismatchError("map must go from g to h")
    ambient = extension_bracket(ExtensionDatum.zero(g, h))
    n, m = g.dim, h.dim
    rows = [[Fraction(0)] * (n + m) for _ in range(n + m)]
    X = xi.matrix.to_fractions()
    for a in range(n):
        for k in range(m):
            rows[a][n + k] = X[k, a]
    table = QArray.from_values(rows) if n + m else QArray.zeros((0, 0))
    return GradedCochain(ambient, 0, table)


def cochain_to_map(c: Cochain, g: ThreeLieAlgebra, h: ThreeLieAlgebra) -> LinearMap:
    n = g.dim
    if c.degree != 0 or not is_restricted(c, n):
        raise DomainError("expected a restricted degree-0 cochain")
    return LinearMap(g.space, h.space, c.table[:n, n:].transpose())


def mc_defect(c: Cochain) -> GradedCochain:
    """``d c + 1/2 [c, c]``; zero exactly on Maurer-Cartan elements."""
    if c.degree != 1:
        raise DomainError("Maurer-Cartan defect is defined on degree 1")
    return dgla_differential(c) + nr_bracket(c, c) * Fraction(1, 2)


def _exp_series(xi: Cochain, start: Cochain, offset: int) -> Cochain:
    """``sum_k ad_xi^k(start) / (k + offset)!``, stopping at the first vanishing power."""
    total, term = start * Fraction(1, factorial(offset)), start
    for k in range(1, MAX_GAUGE_TERMS):
        term = nr_bracket(xi, term)
        if term.is_zero():
            return total
        total = total + term * Fraction(1, factorial(k + offset))
    raise PreconditionError("ad of the degree-0 element is not nilpotent on this cochain")


def gauge_transform(xi: Cochain, c: Cochain, n_base: int) -> GradedCochain:
    """Gauge action of a degree-0 element on a degree-1 element.

    ``exp(ad xi) c - ((exp(ad xi) - 1) / ad xi) d xi``, summed exactly; both
    series terminate on the restricted subalgebra.
    """
    if xi.degree != 0 or c.degree != 1:
        raise DomainError("gauge action takes a degree-0 and a degree-1 cochain")
    _same_ambient(xi, c)
    if not (is_restricted(xi, n_base) and is_restricted(c, n_base)):
        raise DomainError("gauge action is only defined on restricted cochains")
    moved = _exp_series(xi, c, 0)
    shift = _exp_series(xi, dgla_differential(xi), 1)
    return GradedCochain.of(moved - shift)


def ad_power(xi: Cochain, c: Cochain, k: int) -> GradedCochain:
    out = c
    for _ in range(k):
        out = nr_bracket(xi, out)
    return GradedCochain.of(out)
