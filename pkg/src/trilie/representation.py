"""Representations, semidirect products, cochains and their coboundary.

A cochain of degree ``d`` is stored as a dense table of shape
``(P,) * d + (n, m)`` where ``P = n(n-1)/2`` indexes canonical pairs
``e_i ^ e_j`` (``i < j``, lex order), ``n`` is the algebra dimension and ``m``
the dimension of the value space.  Degree 0 is a plain linear map.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from string import ascii_uppercase
from typing import Callable, Sequence

from .algebra import (
    CheckReport,
    LinearMap,
    Space,
    ThreeLieAlgebra,
    Vector,
    Verdict,
    _vector_from_row,
    fundamental_bracket_tensor,
)
from .errors import ShapeError, SpaceMismatchError
from .exact import QArray, as_scalar, is_skew, pair_split, pairs, wedge_tensor

SLOT_LETTERS = ascii_uppercase


def canonical_pair_tensor(full: QArray) -> QArray:
    """Restrict the two leading axes of a pair-skew tensor to canonical pairs."""
    n = full.shape[0]
    first, second = pair_split(n)
    rest = "".join("klmnopqrstuvw"[: full.ndim - 2])
    return QArray.einsum(f"Pa,Pb,ab{rest}->P{rest}", first, second, full)


def pair_bracket_tensor(T: QArray) -> QArray:
    """``B[p, z, :] = [x_p, y_p, e_z]`` for canonical pairs ``p``."""
    first, second = pair_split(T.shape[0])
    return QArray.einsum("pa,pb,abzm->pzm", first, second, T)


class Representation:
    """``rho[a, b, out, in]``: matrix of ``rho(e_a, e_b)`` acting on V, skew in ``a, b``."""

    def __init__(self, algebra: ThreeLieAlgebra, space: Space, rho: QArray | None = None):
        n, m = algebra.dim, space.dim
        if rho is None:
            rho = QArray.zeros((n, n, m, m))
        if rho.shape != (n, n, m, m):
            raise ShapeError(f"rho table shape {rho.shape} does not fit ({n}, {n}, {m}, {m})")
        if not is_skew(rho, (0, 1)):
            raise ShapeError("rho must be skew-symmetric in its two algebra arguments")
        self.algebra = algebra
        self.space = space
        self.rho = rho

    @classmethod
    def from_actions(cls, algebra: ThreeLieAlgebra, space: Space, actions) -> Representation:
        """``actions[(i, j, k)]`` is the coefficient list of ``rho(e_i, e_j) v_k`` for ``i < j``."""
        n, m = algebra.dim, space.dim
        rows = [[[[Fraction(0)] * m for _ in range(m)] for _ in range(n)] for _ in range(n)]
        for (i, j, k), coeffs in actions.items():
            if not (0 <= i < j < n and 0 <= k < m):
                raise ShapeError(f"rho entry {(i, j, k)} is not canonical")
            coeffs = [as_scalar(c) for c in coeffs]
            if len(coeffs) != m:
                raise ShapeError(f"rho entry {(i, j, k)} needs {m} coefficients")
            for o, c in enumerate(coeffs):
                rows[i][j][o][k] = c
                rows[j][i][o][k] = -c
        rho = QArray.from_values(rows) if n and m else QArray.zeros((n, n, m, m))
        return cls(algebra, space, rho)

    @property
    def canonical(self) -> QArray:
        """``rho`` restricted to canonical pairs: shape ``(P, m, m)``."""
        return canonical_pair_tensor(self.rho)

    def act(self, x: Vector, y: Vector, v: Vector) -> Vector:
        if x.space != self.algebra.space or y.space != self.algebra.space:
            raise SpaceMismatchError("rho arguments must lie in the algebra")
        if v.space != self.space:
            raise SpaceMismatchError("rho acts on the representation space")
        if self.space.dim == 0 or self.algebra.dim == 0:
            return self.space.zero()
        out = QArray.einsum("a,b,abok,k->o", x.to_qarray(), y.to_qarray(), self.rho, v.to_qarray())
        return _vector_from_row(self.space, out)


def adjoint_representation(A: ThreeLieAlgebra) -> Representation:
    """``rho(x, y) = [x, y, .]`` on the algebra itself."""
    return Representation(A, A.space, A.tensor.transpose(0, 1, 3, 2))


def rep_defects(R: Representation) -> CheckReport:
    """The two representation identities, scanned over all basis tuples.

    A witness lists the four algebra arguments and the basis vector of V the
    operator defect was applied to.
    """
    T, rho = R.algebra.tensor, R.rho
    first = (
        QArray.einsum("abok,cdki->abcdoi", rho, rho)
        - QArray.einsum("abcm,mdoi->abcdoi", T, rho)
        - QArray.einsum("abdm,cmoi->abcdoi", T, rho)
        - QArray.einsum("cdok,abki->abcdoi", rho, rho)
    )
    second = (
        QArray.einsum("bcdm,amoi->abcdoi", T, rho)
        - QArray.einsum("cdok,abki->abcdoi", rho, rho)
        + QArray.einsum("bdok,acki->abcdoi", rho, rho)
        - QArray.einsum("bcok,adki->abcdoi", rho, rho)
    )
    g, V = R.algebra.space, R.space
    verdicts = []
    for name, defect in (("first", first), ("second", second)):
        hit = defect.transpose(0, 1, 2, 3, 5, 4).first_nonzero()
        if hit is None:
            verdicts.append(Verdict(True, name))
            continue
        a, b, c, d, i, _ = hit
        witness = (g.basis[a], g.basis[b], g.basis[c], g.basis[d], V.basis[i])
        verdicts.append(Verdict(False, name, witness, _vector_from_row(V, defect[a, b, c, d, :, i])))
    return CheckReport(tuple(verdicts))


def disjoint_labels(first: Space, second: Space) -> tuple[str, ...]:
    """Labels of ``second``, qualified by its name when they clash with ``first``."""
    if set(first.basis).isdisjoint(second.basis):
        return second.basis
    return tuple(f"{second.name}.{b}" for b in second.basis)


def semidirect_product(R: Representation, name: str | None = None) -> ThreeLieAlgebra:
    """``[x1+v1, x2+v2, x3+v3] = [x1,x2,x3] + rho(x1,x2)v3 + rho(x2,x3)v1 + rho(x3,x1)v2``."""
    g, V = R.algebra, R.space
    n, m = g.dim, V.dim
    space = Space(name or f"{g.name}x{V.name}", g.space.basis + disjoint_labels(g.space, V))
    constants = {key: list(c) + [0] * m for key, c in g.constants.items()}
    rho = R.rho.to_fractions()
    for a, b in pairs(n):
        for k in range(m):
            col = [rho[a, b, o, k] for o in range(m)]
            if any(col):
                constants[(a, b, n + k)] = [0] * n + col
    return ThreeLieAlgebra(space, constants, name=space.name)


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------


class Cochain:
    """Multilinear map on ``degree`` wedge-pair slots and one vector slot."""

    def __init__(self, algebra: ThreeLieAlgebra, space: Space, degree: int, table: QArray | None = None):
        if degree < 0:
            raise ValueError("cochain degree must be non-negative")
        n, m = algebra.dim, space.dim
        shape = (len(pairs(n)),) * degree + (n, m)
        if table is None:
            table = QArray.zeros(shape)
        if table.shape != shape:
            raise ShapeError(f"cochain table shape {table.shape}, expected {shape}")
        self.algebra = algebra
        self.space = space
        self.degree = degree
        self.table = table

    # construction ---------------------------------------------------------
    def _like(self, table: QArray, degree: int | None = None) -> Cochain:
        return Cochain(self.algebra, self.space, self.degree if degree is None else degree, table)

    @classmethod
    def from_function(
        cls, algebra: ThreeLieAlgebra, space: Space, degree: int, fn: Callable[[tuple[int, ...], int], Sequence]
    ) -> Cochain:
        """``fn(pair_positions, k)`` gives the coefficients on canonical basis arguments."""
        n, m = algebra.dim, space.dim
        P = len(pairs(n))
        shape = (P,) * degree + (n, m)
        values = []
        for slots in product(range(P), repeat=degree):
            for k in range(n):
                out = fn(slots, k)
                coeffs = list(out.coeffs) if isinstance(out, Vector) else [as_scalar(c) for c in out]
                if len(coeffs) != m:
                    raise ShapeError("cochain value has the wrong length")
                values.append(coeffs)
        if not values or m == 0:
            return cls(algebra, space, degree)
        return cls(algebra, space, degree, QArray.from_values(values).reshape(shape))

    @classmethod
    def from_linear_map(cls, algebra: ThreeLieAlgebra, f: LinearMap) -> Cochain:
        if f.domain != algebra.space:
            raise SpaceMismatchError("linear map must be defined on the algebra")
        return cls(algebra, f.codomain, 0, f.matrix.transpose())

    @classmethod
    def bracket_cochain(cls, algebra: ThreeLieAlgebra) -> Cochain:
        """The ternary bracket itself as a degree-1 cochain valued in the algebra."""
        return cls(algebra, algebra.space, 1, canonical_pair_tensor(algebra.tensor))

    # evaluation ---------------------------------------------------------------
    def value(self, slots: Sequence[int], k: int) -> Vector:
        """Value on canonical pair positions ``slots`` and basis index ``k``."""
        if len(slots) != self.degree:
            raise ShapeError(f"expected {self.degree} pair slots")
        return _vector_from_row(self.space, self.table[tuple(slots) + (k,)])

    def evaluate(self, wedges: Sequence[tuple[Vector, Vector]], z: Vector) -> Vector:
        """Evaluate on arbitrary arguments ``x1^y1, ..., z`` by multilinearity."""
        if len(wedges) != self.degree:
            raise ShapeError(f"expected {self.degree} wedge arguments")
        g = self.algebra.space
        for x, y in wedges:
            if x.space != g or y.space != g:
                raise SpaceMismatchError("cochain arguments must lie in the algebra")
        if z.space != g:
            raise SpaceMismatchError("cochain arguments must lie in the algebra")
        if self.space.dim == 0 or g.dim == 0:
            return self.space.zero()
        W = wedge_tensor(g.dim)
        ops, subs = [], []
        for s, (x, y) in enumerate(wedges):
            L = SLOT_LETTERS[s]
            coords = QArray.einsum(f"i,j,ij{L}->{L}", x.to_qarray(), y.to_qarray(), W)
            ops.append(coords)
            subs.append(L)
        ops += [z.to_qarray(), self.table]
        slots = SLOT_LETTERS[: self.degree]
        subs += ["z", f"{slots}zo"]
        return _vector_from_row(self.space, QArray.einsum(",".join(subs) + "->o", *ops))

    # arithmetic ---------------------------------------------------------------
    def _check(self, other: Cochain) -> None:
        if not isinstance(other, Cochain):
            raise TypeError("expected a cochain")
        if (
            other.algebra != self.algebra
            or other.space != self.space
            or other.degree != self.degree
        ):
            raise SpaceMismatchError("cochains differ in algebra, value space or degree")

    def __add__(self, other: Cochain) -> Cochain:
        self._check(other)
        return self._like(self.table + other.table)

    def __sub__(self, other: Cochain) -> Cochain:
        self._check(other)
        return self._like(self.table - other.table)

    def __neg__(self) -> Cochain:
        return self._like(-self.table)

    def __mul__(self, scalar) -> Cochain:
        return self._like(self.table * scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.space == other.space
            and self.algebra == other.algebra
            and self.table == other.table
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return self.table.is_zero()

    def nonzero_arguments(self) -> list[tuple[tuple[int, ...], int]]:
        """Distinct ``(pair positions, basis index)`` arguments with a nonzero value."""
        args = ((idx[: self.degree], idx[self.degree]) for idx in self.table.nonzero_indices())
        return list(dict.fromkeys(args))

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, {self.algebra.name} -> {self.space.name})"


def coboundary(R: Representation, a: Cochain) -> Cochain:
    """Coboundary of a cochain with coefficients in ``R``; raises the degree by one."""
    if a.algebra != R.algebra or a.space != R.space:
        raise SpaceMismatchError("cochain does not match the representation")
    g = R.algebra
    n = g.dim
    p = a.degree + 1
    out_shape = (len(pairs(n)),) * p + (n, R.space.dim)
    if n < 2 or R.space.dim == 0:
        return Cochain(g, R.space, p, QArray.zeros(out_shape))
    A = a.table
    slots = SLOT_LETTERS[:p]
    out = f"{slots}zo"
    F = fundamental_bracket_tensor(g.tensor)
    B = pair_bracket_tensor(g.tensor)
    Rc = R.canonical
    first, second = pair_split(n)
    terms: list[QArray] = []

    def drop(j: int) -> str:
        return slots[:j] + slots[j + 1:]

    # fundamental bracket of two slots replaces the later one
    for j in range(p):
        for k in range(j + 1, p):
            args = "".join("m" if s == k else slots[s] for s in range(p) if s != j)
            t = QArray.einsum(f"{slots[j]}{slots[k]}m,{args}zo->{out}", F, A)
            terms.append(t if j % 2 else -t)
    # a slot acts on the vector argument
    for j in range(p):
        t = QArray.einsum(f"{slots[j]}zm,{drop(j)}mo->{out}", B, A)
        terms.append(t if j % 2 else -t)
    # a slot acts on the value
    for j in range(p):
        t = QArray.einsum(f"{slots[j]}on,{drop(j)}zn->{out}", Rc, A)
        terms.append(-t if j % 2 else t)
    # trailing terms from the last slot
    last, head = slots[-1], slots[:-1]
    t = QArray.einsum(f"{last}y,{last}x,yzon,{head}xn->{out}", second, first, R.rho, A) + QArray.einsum(
        f"{last}x,{last}y,zxon,{head}yn->{out}", first, second, R.rho, A
    )
    terms.append(t if p % 2 else -t)
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return Cochain(g, R.space, p, total)
