"""Exact rational arrays.

A :class:`QArray` is an integer numerator array sharing a single positive
denominator.  Arithmetic runs on int64 whenever a cheap magnitude bound shows
no overflow is possible and falls back to Python integers (``dtype=object``)
otherwise, so every result is exact.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeError

_LIMIT = 2**62

Scalar = Fraction


def as_scalar(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact scalar: {value!r}")


def _maxabs(num: np.ndarray) -> int:
    if num.size == 0:
        return 0
    if num.dtype == object:
        return max(abs(int(v)) for v in num.flat)
    return int(np.abs(num).max())


def _to_object(num: np.ndarray) -> np.ndarray:
    if num.dtype == object:
        return num
    out = np.empty(num.shape, dtype=object)
    out.flat[:] = [int(v) for v in num.flat]
    return out


def _maybe_int64(num: np.ndarray) -> np.ndarray:
    if num.dtype != object:
        return num
    if _maxabs(num) < _LIMIT:
        return num.astype(np.int64)
    return num


def _gcd_all(num: np.ndarray) -> int:
    if num.size == 0:
        return 0
    if num.dtype == object:
        return reduce(math.gcd, (int(v) for v in num.flat), 0)
    return int(np.gcd.reduce(num.ravel()))


class QArray:
    """Dense array of rationals stored as ``num / den``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        num = np.asarray(num)
        if num.dtype != object and not np.issubdtype(num.dtype, np.integer):
            raise TypeError("QArray numerators must be integers")
        if num.dtype != object:
            num = num.astype(np.int64, copy=False)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        if den != 1:
            g = math.gcd(_gcd_all(num), den)
            if g > 1:
                num = num // g
                den //= g
        self.num = _maybe_int64(num)
        self.den = den

    # construction ---------------------------------------------------------
    @classmethod
    def zeros(cls, shape) -> QArray:
        return cls(np.zeros(shape, dtype=np.int64))

    @classmethod
    def from_values(cls, values) -> QArray:
        """Build from a nested sequence (or object array) of exact scalars."""
        arr = np.asarray(values, dtype=object)
        flat = [as_scalar(v) for v in arr.flat]
        den = reduce(math.lcm, (f.denominator for f in flat), 1)
        num = np.empty(arr.shape, dtype=object)
        num.flat[:] = [f.numerator * (den // f.denominator) for f in flat]
        return cls(num, den)

    # basic protocol ---------------------------------------------------------
    @property
    def shape(self) -> tuple[int, ...]:
        return self.num.shape

    @property
    def ndim(self) -> int:
        return self.num.ndim

    def __repr__(self) -> str:
        return f"QArray(shape={self.shape}, den={self.den})"

    def __getitem__(self, idx):
        sub = self.num[idx]
        if isinstance(sub, np.ndarray):
            return QArray(sub.copy(), self.den)
        return Fraction(int(sub), self.den)

    def to_fractions(self) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        out.flat[:] = [Fraction(int(v), self.den) for v in self.num.flat]
        return out

    def tolist(self):
        return self.to_fractions().tolist()

    def copy(self) -> QArray:
        return QArray(self.num.copy(), self.den)

    def transpose(self, *axes) -> QArray:
        return QArray(self.num.transpose(*axes), self.den)

    def reshape(self, *shape) -> QArray:
        return QArray(self.num.reshape(*shape), self.den)

    def with_entry(self, idx, value) -> QArray:
        """Copy with one entry replaced."""
        value = as_scalar(value)
        den = math.lcm(self.den, value.denominator)
        num = _to_object(self.num) * (den // self.den)
        num[idx] = value.numerator * (den // value.denominator)
        return QArray(num, den)

    # arithmetic -------------------------------------------------------------
    def _aligned(self, other: QArray):
        den = math.lcm(self.den, other.den)
        a, b = self.num, other.num
        fa, fb = den // self.den, den // other.den
        if _maxabs(a) * fa + _maxabs(b) * fb >= _LIMIT:
            a, b = _to_object(a), _to_object(b)
        return a * fa, b * fb, den

    def __add__(self, other: QArray) -> QArray:
        if not isinstance(other, QArray):
            return NotImplemented
        _check_shape(self, other)
        a, b, den = self._aligned(other)
        return QArray(a + b, den)

    def __sub__(self, other: QArray) -> QArray:
        if not isinstance(other, QArray):
            return NotImplemented
        _check_shape(self, other)
        a, b, den = self._aligned(other)
        return QArray(a - b, den)

    def __neg__(self) -> QArray:
        return QArray(-self.num, self.den)

    def __mul__(self, scalar) -> QArray:
        s = as_scalar(scalar)
        num = self.num
        if _maxabs(num) * abs(s.numerator) >= _LIMIT:
            num = _to_object(num)
        return QArray(num * s.numerator, self.den * s.denominator)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> QArray:
        s = as_scalar(scalar)
        return self * (1 / s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QArray):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b, _ = self._aligned(other)
        return bool(np.all(a == b))

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self.num)

    def nonzero_indices(self) -> list[tuple[int, ...]]:
        """All nonzero positions in lexicographic order."""
        return [tuple(int(i) for i in ix) for ix in np.argwhere(self.num != 0)]

    def first_nonzero(self) -> tuple[int, ...] | None:
        hits = np.argwhere(self.num != 0)
        if len(hits) == 0:
            return None
        return tuple(int(i) for i in hits[0])

    # contraction --------------------------------------------------------
    @staticmethod
    def einsum(subscripts: str, *ops: QArray) -> QArray:
        """Exact ``numpy.einsum`` over rational operands."""
        inputs, _, output = subscripts.replace(" ", "").partition("->")
        terms = inputs.split(",")
        if len(terms) != len(ops):
            raise ValueError("operand count does not match subscripts")
        sizes: dict[str, int] = {}
        for term, op in zip(terms, ops):
            if len(term) != op.ndim:
                raise ValueError(f"subscript {term!r} does not match shape {op.shape}")
            for letter, n in zip(term, op.shape):
                if sizes.setdefault(letter, n) != n:
                    raise ValueError(f"inconsistent size for index {letter!r}")
        summed = math.prod(n for letter, n in sizes.items() if letter not in output)
        bound = summed * math.prod(_maxabs(op.num) for op in ops)
        den = math.prod(op.den for op in ops)
        if bound < _LIMIT and all(op.num.dtype != object for op in ops):
            num = np.einsum(subscripts, *(op.num for op in ops), optimize=len(ops) > 2)
        else:
            num = _object_einsum(terms, output, [_to_object(op.num) for op in ops])
        return QArray(num, den)


def _object_einsum(terms: list[str], output: str, nums: list[np.ndarray]) -> np.ndarray:
    # pairwise contraction keeps object-dtype einsum cheap
    term, acc = terms[0], nums[0]
    for k in range(1, len(terms)):
        rest = set(output).union(*terms[k + 1:])
        joined = term + terms[k]
        keep = "".join(dict.fromkeys(c for c in joined if c in rest))
        acc = np.einsum(f"{term},{terms[k]}->{keep}", acc, nums[k])
        term = keep
    if term != output:
        acc = np.einsum(f"{term}->{output}", acc)
    return np.asarray(acc, dtype=object)


def _check_shape(a: QArray, b: QArray) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")


def qsum(arrays: Iterable[QArray], shape=None) -> QArray:
    total = None
    for arr in arrays:
        total = arr if total is None else total + arr
    if total is None:
        if shape is None:
            raise ValueError("empty sum needs an explicit shape")
        return QArray.zeros(shape)
    return total


# ---------------------------------------------------------------------------
# wedge-pair bookkeeping
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Canonical basis of the exterior square: ``(i, j)`` with ``i < j``."""
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(pairs(n))}


def wedge_coords(i: int, j: int, n: int) -> tuple[int, int] | None:
    """``e_i ^ e_j`` as ``(sign, pair position)``, or None when ``i == j``."""
    if i == j:
        return None
    if i < j:
        return 1, pair_index(n)[(i, j)]
    return -1, pair_index(n)[(j, i)]


@lru_cache(maxsize=None)
def wedge_tensor(n: int) -> QArray:
    """``W[i, j, p]``: coefficient of the p-th canonical pair in ``e_i ^ e_j``."""
    out = np.zeros((n, n, len(pairs(n))), dtype=np.int64)
    for k, (i, j) in enumerate(pairs(n)):
        out[i, j, k] = 1
        out[j, i, k] = -1
    return QArray(out)


@lru_cache(maxsize=None)
def pair_split(n: int) -> tuple[QArray, QArray]:
    """One-hot selectors ``(first, second)`` of shape ``(P, n)``."""
    ps = pairs(n)
    first = np.zeros((len(ps), n), dtype=np.int64)
    second = np.zeros((len(ps), n), dtype=np.int64)
    for k, (i, j) in enumerate(ps):
        first[k, i] = 1
        second[k, j] = 1
    return QArray(first), QArray(second)


def skew3_from_canonical(n: int, out_dim: int, entries) -> QArray:
    """Expand ``{(i, j, k): coeffs}`` with ``i < j < k`` into a fully skew tensor."""
    num = np.zeros((n, n, n, out_dim), dtype=object)
    num[...] = 0
    vals: dict[tuple[int, int, int], Sequence[Fraction]] = {}
    den = 1
    for key, coeffs in entries.items():
        coeffs = [as_scalar(c) for c in coeffs]
        if len(coeffs) != out_dim:
            raise ValueError(f"entry {key} has {len(coeffs)} coefficients, expected {out_dim}")
        vals[key] = coeffs
        den = reduce(math.lcm, (c.denominator for c in coeffs), den)
    for (i, j, k), coeffs in vals.items():
        row = [c.numerator * (den // c.denominator) for c in coeffs]
        for perm, sign in _PERMS3:
            a, b, c = (i, j, k)[perm[0]], (i, j, k)[perm[1]], (i, j, k)[perm[2]]
            for l, v in enumerate(row):
                num[a, b, c, l] = sign * v
    return QArray(num, den)


_PERMS3 = (
    ((0, 1, 2), 1),
    ((1, 2, 0), 1),
    ((2, 0, 1), 1),
    ((1, 0, 2), -1),
    ((0, 2, 1), -1),
    ((2, 1, 0), -1),
)


def is_skew(tensor: QArray, axes: Sequence[int]) -> bool:
    """True iff ``tensor`` changes sign under every transposition of ``axes``."""
    nd = tensor.ndim
    for a, b in combinations(axes, 2):
        perm = list(range(nd))
        perm[a], perm[b] = perm[b], perm[a]
        if not (tensor + tensor.transpose(*perm)).is_zero():
            return False
    return True


_LABEL_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def check_label(label: str) -> str:
    if not _LABEL_RE.match(label):
        raise ValueError(f"invalid basis label {label!r}")
    return label
