"""Vectors, structure-constant algebras and the elementary identity checkers.

Ternary brackets are stored only on canonical triples ``i < j < k``; every
other index order is resolved by the permutation sign when evaluating, so a
``ThreeLieAlgebra`` is skew-symmetric by construction.  The Fundamental
Identity, on the other hand, is *not* a representation invariant: use
:func:`is_three_lie` to certify it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import ShapeError, SpaceMismatchError
from .exact import QArray, as_scalar, pair_split, pairs, skew3_from_canonical, wedge_tensor

# 6**5 basis tuples is the largest exhaustive FI scan done in one shot
FULL_SCAN_MAX_DIM = 6


@dataclass(frozen=True)
class Space:
    """A finite-dimensional space with named basis vectors."""

    name: str
    basis: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(set(self.basis)) != len(self.basis):
            raise ValueError(f"duplicate basis labels in {self.name!r}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a basis vector of {self.name!r}") from None

    def zero(self) -> Vector:
        return Vector(self, (Fraction(0),) * self.dim)

    def basis_vector(self, i: int) -> Vector:
        coeffs = [Fraction(0)] * self.dim
        coeffs[i] = Fraction(1)
        return Vector(self, tuple(coeffs))

    def vector(self, coeffs: Sequence) -> Vector:
        return Vector(self, tuple(coeffs))

    def __getitem__(self, label: str) -> Vector:
        return self.basis_vector(self.index(label))

    def __iter__(self) -> Iterator[Vector]:
        return (self.basis_vector(i) for i in range(self.dim))


@dataclass(frozen=True)
class Vector:
    space: Space
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(as_scalar(c) for c in self.coeffs)
        if len(coeffs) != self.space.dim:
            raise ShapeError(
                f"{len(coeffs)} coefficients for space {self.space.name!r} of dim {self.space.dim}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    def _same(self, other: Vector) -> None:
        if not isinstance(other, Vector) or other.space != self.space:
            raise SpaceMismatchError(
                f"cannot combine vectors of {self.space.name!r} and "
                f"{getattr(getattr(other, 'space', None), 'name', other)!r}"
            )

    def __add__(self, other: Vector) -> Vector:
        self._same(other)
        return Vector(self.space, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Vector) -> Vector:
        self._same(other)
        return Vector(self.space, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Vector:
        return Vector(self.space, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar) -> Vector:
        s = as_scalar(scalar)
        return Vector(self.space, tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def to_qarray(self) -> QArray:
        return QArray.from_values(list(self.coeffs))

    def __str__(self) -> str:
        return format_combination(self.coeffs, self.space.basis)


def format_combination(coeffs: Sequence[Fraction], labels: Sequence[str]) -> str:
    parts = []
    for c, label in zip(coeffs, labels):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        term = label if mag == 1 else f"{mag}*{label}"
        parts.append((sign, term))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


def _vector_from_row(space: Space, row: QArray) -> Vector:
    return Vector(space, tuple(row.to_fractions().tolist()))


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Outcome of one identity check; ``witness`` is the first failing tuple."""

    ok: bool
    name: str = ""
    witness: tuple[str, ...] | None = None
    defect: object = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        where = "(" + ", ".join(self.witness) + ")" if self.witness is not None else ""
        return f"fail at {where}: {self.defect}"


@dataclass(frozen=True)
class CheckReport:
    """An ordered collection of named verdicts."""

    checks: tuple[Verdict, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> Verdict:
        for v in self.checks:
            if v.name == name:
                return v
        raise KeyError(name)

    def __iter__(self) -> Iterator[Verdict]:
        return iter(self.checks)

    def names(self) -> list[str]:
        return [v.name for v in self.checks]

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.checks if not v.ok]


# ---------------------------------------------------------------------------
# algebras and maps
# ---------------------------------------------------------------------------


def _as_space(space, name: str) -> Space:
    if isinstance(space, Space):
        return space
    return Space(name, tuple(space))


class ThreeLieAlgebra:
    """Skew-symmetric ternary bracket given by canonical structure constants.

    ``constants`` maps ``(i, j, k)`` with ``0 <= i < j < k < dim`` to the
    coefficient list of ``[e_i, e_j, e_k]``.
    """

    def __init__(self, space: Space | Sequence[str], constants: Mapping | None = None, name: str = "g"):
        self.space = _as_space(space, name)
        n = self.space.dim
        table: dict[tuple[int, int, int], tuple[Fraction, ...]] = {}
        for key, coeffs in (constants or {}).items():
            i, j, k = (int(t) for t in key)
            if not (0 <= i < j < k < n):
                raise ShapeError(f"structure constant key {key} is not a canonical triple for dim {n}")
            coeffs = tuple(as_scalar(c) for c in coeffs)
            if len(coeffs) != n:
                raise ShapeError(f"entry {key} has {len(coeffs)} coefficients, expected {n}")
            if any(coeffs):
                table[(i, j, k)] = coeffs
        self._constants = table
        self.tensor = skew3_from_canonical(n, n, table)

    @classmethod
    def from_tensor(cls, space: Space, tensor: QArray, name: str | None = None) -> ThreeLieAlgebra:
        n = space.dim
        if tensor.shape != (n, n, n, n):
            raise ShapeError(f"tensor shape {tensor.shape} does not fit dim {n}")
        fr = tensor.to_fractions()
        constants = {
            (i, j, k): fr[i, j, k].tolist()
            for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)
        }
        alg = cls(space, constants, name=name or space.name)
        if alg.tensor != tensor:
            raise ShapeError("tensor is not skew-symmetric in its three arguments")
        return alg

    @classmethod
    def abelian(cls, space: Space | Sequence[str], name: str = "g") -> ThreeLieAlgebra:
        return cls(space, {}, name=name)

    @classmethod
    def from_brackets(cls, labels: Sequence[str], brackets: Mapping, name: str = "g") -> ThreeLieAlgebra:
        """Build from ``{("x1", "x2", "x3"): {"x4": 1}}`` in any argument order.

        A value may also be a single label, meaning coefficient 1.
        """
        space = Space(name, tuple(labels))
        constants: dict[tuple[int, int, int], list[Fraction]] = {}
        for key, value in brackets.items():
            idx = [space.index(lbl) for lbl in key]
            sign = _sort_sign(idx)
            if sign == 0:
                raise ShapeError(f"repeated argument in {key}")
            if isinstance(value, str):
                value = {value: 1}
            coeffs = [Fraction(0)] * space.dim
            for lbl, c in value.items():
                coeffs[space.index(lbl)] += sign * as_scalar(c)
            constants[tuple(sorted(idx))] = coeffs
        return cls(space, constants, name=name)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def name(self) -> str:
        return self.space.name

    @property
    def constants(self) -> dict[tuple[int, int, int], tuple[Fraction, ...]]:
        """Nonzero canonical structure constants."""
        return dict(self._constants)

    def basis_bracket(self, i: int, j: int, k: int) -> tuple[int, tuple[Fraction, ...] | None]:
        """``[e_i, e_j, e_k]`` as ``(sign, canonical coefficients)``."""
        sign = _sort_sign([i, j, k])
        if sign == 0:
            return 0, None
        return sign, self._constants.get(tuple(sorted((i, j, k))))

    def bracket(self, x: Vector, y: Vector, z: Vector) -> Vector:
        return bracket3(self, x, y, z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThreeLieAlgebra):
            return NotImplemented
        return self.space == other.space and self._constants == other._constants

    __hash__ = None

    def __repr__(self) -> str:
        return f"ThreeLieAlgebra({self.name!r}, dim={self.dim}, nonzero={len(self._constants)})"


class LeibnizAlgebra:
    """Binary bracket ``[e_i, e_j] = sum_k b[i][j][k] e_k`` with no symmetry imposed."""

    def __init__(self, space: Space | Sequence[str], tensor: QArray | None = None, name: str = "L"):
        self.space = _as_space(space, name)
        n = self.space.dim
        if tensor is None:
            tensor = QArray.zeros((n, n, n))
        if tensor.shape != (n, n, n):
            raise ShapeError(f"Leibniz table shape {tensor.shape} does not fit dim {n}")
        self.tensor = tensor

    @classmethod
    def from_constants(cls, space, constants: Mapping, name: str = "L") -> LeibnizAlgebra:
        space = _as_space(space, name)
        n = space.dim
        rows = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), coeffs in constants.items():
            coeffs = [as_scalar(c) for c in coeffs]
            if len(coeffs) != n or not (0 <= i < n and 0 <= j < n):
                raise ShapeError(f"bad Leibniz entry {(i, j)}")
            rows[i][j] = coeffs
        return cls(space, QArray.from_values(rows) if n else QArray.zeros((0, 0, 0)), name=name)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def name(self) -> str:
        return self.space.name

    def bracket(self, x: Vector, y: Vector) -> Vector:
        return bracket2(self, x, y)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LeibnizAlgebra):
            return NotImplemented
        return self.space == other.space and self.tensor == other.tensor

    __hash__ = None

    def __repr__(self) -> str:
        return f"LeibnizAlgebra({self.name!r}, dim={self.dim})"


class LinearMap:
    """Matrix of shape ``codomain.dim x domain.dim`` acting on column vectors."""

    def __init__(self, domain: Space, codomain: Space, matrix: QArray):
        if matrix.shape != (codomain.dim, domain.dim):
            raise ShapeError(
                f"matrix shape {matrix.shape} does not match {codomain.name}<-{domain.name} "
                f"({codomain.dim}x{domain.dim})"
            )
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix

    @classmethod
    def from_rows(cls, domain: Space, codomain: Space, rows) -> LinearMap:
        if codomain.dim == 0 or domain.dim == 0:
            return cls.zero(domain, codomain)
        return cls(domain, codomain, QArray.from_values(rows))

    @classmethod
    def from_images(cls, domain: Space, codomain: Space, images: Sequence[Vector]) -> LinearMap:
        """The map sending the i-th basis vector of ``domain`` to ``images[i]``."""
        if len(images) != domain.dim:
            raise ShapeError("need one image per basis vector")
        for v in images:
            if v.space != codomain:
                raise SpaceMismatchError("image outside the codomain")
        rows = [[images[j][i] for j in range(domain.dim)] for i in range(codomain.dim)]
        return cls.from_rows(domain, codomain, rows)

    @classmethod
    def identity(cls, space: Space) -> LinearMap:
        return cls(space, space, QArray(np.eye(space.dim, dtype=np.int64)))

    @classmethod
    def zero(cls, domain: Space, codomain: Space) -> LinearMap:
        return cls(domain, codomain, QArray.zeros((codomain.dim, domain.dim)))

    def __call__(self, v: Vector) -> Vector:
        if v.space != self.domain:
            raise SpaceMismatchError(f"map expects {self.domain.name!r}, got {v.space.name!r}")
        if self.domain.dim == 0:
            return self.codomain.zero()
        out = QArray.einsum("ij,j->i", self.matrix, v.to_qarray())
        return _vector_from_row(self.codomain, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.domain, self.codomain) == (other.domain, other.codomain) and self.matrix == other.matrix

    __hash__ = None


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _sort_sign(idx: Sequence[int]) -> int:
    if len(set(idx)) != len(idx):
        return 0
    sign = 1
    idx = list(idx)
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign


def _require(space: Space, *vectors: Vector) -> None:
    for v in vectors:
        if not isinstance(v, Vector) or v.space != space:
            raise SpaceMismatchError(
                f"argument lives in {getattr(getattr(v, 'space', None), 'name', v)!r}, "
                f"expected {space.name!r}"
            )


def bracket3(A: ThreeLieAlgebra, x: Vector, y: Vector, z: Vector) -> Vector:
    """Trilinear expansion of ``[x, y, z]`` through the canonical constants."""
    _require(A.space, x, y, z)
    out = [Fraction(0)] * A.dim
    for i in x.support():
        for j in y.support():
            if j == i:
                continue
            for k in z.support():
                sign, coeffs = A.basis_bracket(i, j, k)
                if not sign or coeffs is None:
                    continue
                s = sign * x[i] * y[j] * z[k]
                for l, c in enumerate(coeffs):
                    if c:
                        out[l] += s * c
    return Vector(A.space, tuple(out))


def fi_defect(A: ThreeLieAlgebra, x1: Vector, x2: Vector, x3: Vector, x4: Vector, x5: Vector) -> Vector:
    """Four-term Fundamental Identity defect; zero iff the identity holds on this tuple."""
    _require(A.space, x1, x2, x3, x4, x5)
    b = A.bracket
    return (
        b(x1, x2, b(x3, x4, x5))
        - b(b(x1, x2, x3), x4, x5)
        - b(x3, b(x1, x2, x4), x5)
        - b(x3, x4, b(x1, x2, x5))
    )


def fi_tensor(T: QArray) -> QArray:
    """Defect tensor ``F[a, b, c, d, e, :]`` of the Fundamental Identity on basis tuples."""
    return (
        QArray.einsum("cdem,abmz->abcdez", T, T)
        - QArray.einsum("abcm,mdez->abcdez", T, T)
        - QArray.einsum("abdm,cmez->abcdez", T, T)
        - QArray.einsum("abem,cdmz->abcdez", T, T)
    )


def _labels(space: Space, idx: Sequence[int]) -> tuple[str, ...]:
    return tuple(space.basis[i] for i in idx)


def is_three_lie(A: ThreeLieAlgebra) -> Verdict:
    """Certify the Fundamental Identity on every basis 5-tuple.

    Dimensions up to ``FULL_SCAN_MAX_DIM`` scan all ``dim**5`` tuples.  Above
    that the scan is restricted to ``i1 < i2`` and ``i3 < i4 < i5``, which
    suffices because the defect is skew in both groups.
    """
    n = A.dim
    witness = None
    if n <= FULL_SCAN_MAX_DIM:
        witness = fi_tensor(A.tensor).first_nonzero()
    else:
        T = A.tensor
        for a in range(n):
            for b in range(a + 1, n):
                Tab = T[a : a + 1, b : b + 1]
                block = (
                    QArray.einsum("cdem,abmz->abcdez", T, Tab)
                    - QArray.einsum("abcm,mdez->abcdez", Tab, T)
                    - QArray.einsum("abdm,cmez->abcdez", Tab, T)
                    - QArray.einsum("abem,cdmz->abcdez", Tab, T)
                )
                for _, _, c, d, e, _ in block.nonzero_indices():
                    if c < d < e:
                        witness = (a, b, c, d, e, 0)
                        break
                if witness:
                    break
            if witness:
                break
    if witness is None:
        return Verdict(True, "FI")
    idx = witness[:5]
    vecs = [A.space.basis_vector(i) for i in idx]
    return Verdict(False, "FI", _labels(A.space, idx), fi_defect(A, *vecs))


def bracket2(L: LeibnizAlgebra, x: Vector, y: Vector) -> Vector:
    _require(L.space, x, y)
    if L.dim == 0:
        return L.space.zero()
    out = QArray.einsum("i,j,ijk->k", x.to_qarray(), y.to_qarray(), L.tensor)
    return _vector_from_row(L.space, out)


def leibniz_defect(L: LeibnizAlgebra, x: Vector, y: Vector, z: Vector) -> Vector:
    """``[x,[y,z]] - [[x,y],z] - [y,[x,z]]``; zero iff the left Leibniz rule holds here."""
    b = L.bracket
    return b(x, b(y, z)) - b(b(x, y), z) - b(y, b(x, z))


def leibniz_tensor(B: QArray) -> QArray:
    return (
        QArray.einsum("jkm,iml->ijkl", B, B)
        - QArray.einsum("ijm,mkl->ijkl", B, B)
        - QArray.einsum("ikm,jml->ijkl", B, B)
    )


def is_leibniz(L: LeibnizAlgebra) -> Verdict:
    hit = leibniz_tensor(L.tensor).first_nonzero()
    if hit is None:
        return Verdict(True, "Leibniz")
    idx = hit[:3]
    vecs = [L.space.basis_vector(i) for i in idx]
    return Verdict(False, "Leibniz", _labels(L.space, idx), leibniz_defect(L, *vecs))


def fundamental_bracket_tensor(T: QArray) -> QArray:
    """Structure constants of the fundamental-object bracket on canonical pairs."""
    n = T.shape[0]
    W = wedge_tensor(n)
    full = QArray.einsum("ijkm,mlr->ijklr", T, W) + QArray.einsum("ijlm,kmr->ijklr", T, W)
    first, second = pair_split(n)
    return QArray.einsum("pi,pj,qk,ql,ijklr->pqr", first, second, first, second, full)


def wedge_labels(space: Space) -> tuple[str, ...]:
    return tuple(f"{space.basis[i]}^{space.basis[j]}" for i, j in pairs(space.dim))


def fundamental_leibniz(A: ThreeLieAlgebra) -> LeibnizAlgebra:
    """Leibniz algebra of fundamental objects, basis ``e_i ^ e_j`` (``i < j``, lex)."""
    space = Space(f"wedge2({A.name})", wedge_labels(A.space))
    if A.dim < 2:
        return LeibnizAlgebra(space, QArray.zeros((0, 0, 0)))
    return LeibnizAlgebra(space, fundamental_bracket_tensor(A.tensor))


def _endomorphism(L: LeibnizAlgebra, D: LinearMap) -> None:
    if D.domain != L.space or D.codomain != L.space:
        raise ShapeError("derivation candidate must be an endomorphism of the algebra's space")


def _derivation_verdict(L: LeibnizAlgebra, defect: QArray, name: str) -> Verdict:
    hit = defect.first_nonzero()
    if hit is None:
        return Verdict(True, name)
    i, j = hit[:2]
    return Verdict(False, name, _labels(L.space, (i, j)), _vector_from_row(L.space, defect[i, j]))


def is_left_derivation(L: LeibnizAlgebra, D: LinearMap) -> Verdict:
    """``D[x,y] = [Dx,y] + [x,Dy]`` on all basis pairs."""
    _endomorphism(L, D)
    B, M = L.tensor, D.matrix
    defect = (
        QArray.einsum("ijk,zk->ijz", B, M)
        - QArray.einsum("mi,mjz->ijz", M, B)
        - QArray.einsum("mj,imz->ijz", M, B)
    )
    return _derivation_verdict(L, defect, "left-derivation")


def is_right_derivation(L: LeibnizAlgebra, D: LinearMap) -> Verdict:
    """``D[x,y] = [x,Dy] - [y,Dx]`` on all basis pairs."""
    _endomorphism(L, D)
    B, M = L.tensor, D.matrix
    defect = (
        QArray.einsum("ijk,zk->ijz", B, M)
        - QArray.einsum("mj,imz->ijz", M, B)
        + QArray.einsum("mi,jmz->ijz", M, B)
    )
    return _derivation_verdict(L, defect, "right-derivation")


def ad_left(L: LeibnizAlgebra, x: Vector) -> LinearMap:
    return LinearMap.from_images(L.space, L.space, [L.bracket(x, e) for e in L.space])


def ad_right(L: LeibnizAlgebra, x: Vector) -> LinearMap:
    return LinearMap.from_images(L.space, L.space, [L.bracket(e, x) for e in L.space])


def is_morphism3(f: LinearMap, A: ThreeLieAlgebra, B: ThreeLieAlgebra) -> Verdict:
    """``f[x,y,z]_A = [fx,fy,fz]_B`` on all canonical basis triples."""
    if f.domain != A.space or f.codomain != B.space:
        raise ShapeError("map does not go from the first algebra to the second")
    F = f.matrix
    defect = QArray.einsum("ijkm,zm->ijkz", A.tensor, F) - QArray.einsum(
        "ai,bj,ck,abcz->ijkz", F, F, F, B.tensor
    )
    hit = defect.first_nonzero()
    if hit is None:
        return Verdict(True, "morphism")
    i, j, k = hit[:3]
    return Verdict(False, "morphism", _labels(A.space, (i, j, k)), _vector_from_row(B.space, defect[i, j, k]))


def direct_sum(A: ThreeLieAlgebra, B: ThreeLieAlgebra, name: str | None = None) -> ThreeLieAlgebra:
    """``[x+u, y+v, z+w] = [x,y,z]_A + [u,v,w]_B`` on the concatenated basis."""
    n, m = A.dim, B.dim
    space = Space(name or f"{A.name}+{B.name}", A.space.basis + B.space.basis)
    constants = {}
    for (i, j, k), c in A.constants.items():
        constants[(i, j, k)] = list(c) + [0] * m
    for (i, j, k), c in B.constants.items():
        constants[(n + i, n + j, n + k)] = [0] * n + list(c)
    return ThreeLieAlgebra(space, constants, name=space.name)


def basis_tuples(n: int, arity: int) -> Iterator[tuple[int, ...]]:
    return product(range(n), repeat=arity)
