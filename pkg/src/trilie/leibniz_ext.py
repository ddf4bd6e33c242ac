"""Leibniz algebra of fundamental objects of an extension, built from its pieces.

The fiber space ``W`` has basis ``u_a ^ u_b`` (``a < b`` over h) followed by
``x_i (x) u_a`` over g x h, both in lexicographic order.  ``l``, ``r`` and
``varpi`` attach ``W`` to the fundamental algebra of g; the assembled algebra
lives on ``W + wedge2(g)`` in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import (
    CheckReport,
    LeibnizAlgebra,
    Space,
    Verdict,
    _vector_from_row,
    fundamental_leibniz,
    is_leibniz,
    wedge_labels,
)
from .errors import PreconditionError, ShapeError
from .exact import QArray, pair_index, pair_split, pairs, wedge_tensor
from .extension import ExtensionDatum, extension_bracket, extension_defects


def w_space(D: ExtensionDatum) -> Space:
    h, g = D.h.space, D.g.space
    labels = wedge_labels(h) + tuple(f"{x}(x){u}" for x in g.basis for u in h.basis)
    return Space(f"W({D.g.name},{D.h.name})", labels)


@lru_cache(maxsize=32)
def _embeddings(n: int, m: int) -> tuple[QArray, QArray]:
    """``wedge[a, b, t]`` places ``u_a ^ u_b`` and ``tensor[i, a, t]`` places ``x_i (x) u_a`` in W."""
    P = len(pairs(m))
    S = P + n * m
    wedge = np.zeros((m, m, S), dtype=np.int64)
    wedge[:, :, :P] = wedge_tensor(m).num
    tensor = np.zeros((n, m, S), dtype=np.int64)
    for i in range(n):
        for a in range(m):
            tensor[i, a, P + i * m + a] = 1
    return QArray(wedge), QArray(tensor)


def _place(target: np.ndarray, index, block: QArray) -> None:
    target[index] = block.to_fractions()


def _from_blocks(shape, placements) -> QArray:
    arr = np.empty(shape, dtype=object)
    arr[...] = Fraction(0)
    for index, block in placements:
        _place(arr, index, block)
    if arr.size == 0:
        return QArray.zeros(shape)
    return QArray.from_values(arr)


def _require_certified(D: ExtensionDatum) -> None:
    report = extension_defects(D)
    if not report.ok:
        first = report.failures[0]
        raise PreconditionError(f"extension datum is not certified: {first.name} {first.describe()}")


def _w_bracket_tensor(D: ExtensionDatum) -> QArray:
    n, m = D.g.dim, D.h.dim
    P = len(pairs(m))
    S = P + n * m
    Wh, Tgh = _embeddings(n, m)
    Th, R, N = D.h.tensor, D.rho, D.nu
    f, s = pair_split(m)
    hh = QArray.einsum("Pa,Pb,Qc,Qd,abck,kdt->PQt", f, s, f, s, Th, Wh) + QArray.einsum(
        "Pa,Pb,Qc,Qd,abdk,ckt->PQt", f, s, f, s, Th, Wh
    )
    hg = QArray.einsum("Pa,Pb,iabk,ket->Piet", f, s, N, Wh) + QArray.einsum(
        "Pa,Pb,abek,ikt->Piet", f, s, Th, Tgh
    )
    gh = QArray.einsum("Qc,Qd,ieck,kdt->ieQt", f, s, N, Wh) + QArray.einsum(
        "Qc,Qd,ckt,iedk->ieQt", f, s, Wh, N
    )
    gg = QArray.einsum("ijke,kft->iejft", R, Wh) * -1 + QArray.einsum("iefk,jkt->iejft", N, Tgh)
    return _from_blocks(
        (S, S, S),
        [
            ((slice(0, P), slice(0, P)), hh),
            ((slice(0, P), slice(P, S)), hg.reshape(P, n * m, S)),
            ((slice(P, S), slice(0, P)), gh.reshape(n * m, P, S)),
            ((slice(P, S), slice(P, S)), gg.reshape(n * m, n * m, S)),
        ],
    )


def w_bracket(D: ExtensionDatum) -> LeibnizAlgebra:
    """Leibniz bracket on ``wedge2(h) + g (x) h`` induced by a certified datum."""
    _require_certified(D)
    return LeibnizAlgebra(w_space(D), _w_bracket_tensor(D))


@dataclass(frozen=True)
class LeibnizExtensionDatum:
    """Pieces of a Leibniz extension of ``base`` by ``fiber``.

    ``left[x, out, in]`` and ``right[y, out, in]`` are the two actions of the
    base on the fiber; ``varpi[x, y, out]`` is the fiber-valued cocycle.
    """

    base: LeibnizAlgebra
    fiber: LeibnizAlgebra
    left: QArray
    right: QArray
    varpi: QArray

    def __post_init__(self):
        K, S = self.base.dim, self.fiber.dim
        for label, table, shape in (
            ("left", self.left, (K, S, S)),
            ("right", self.right, (K, S, S)),
            ("varpi", self.varpi, (K, K, S)),
        ):
            if table.shape != shape:
                raise ShapeError(f"{label} has shape {table.shape}, expected {shape}")

    def with_varpi(self, varpi: QArray) -> LeibnizExtensionDatum:
        return LeibnizExtensionDatum(self.base, self.fiber, self.left, self.right, varpi)


def build_l_r_varpi(D: ExtensionDatum) -> LeibnizExtensionDatum:
    """Actions and cocycle of the fundamental algebra of g on ``W``."""
    _require_certified(D)
    n, m = D.g.dim, D.h.dim
    P = len(pairs(m))
    S = P + n * m
    K = len(pairs(n))
    Wh, Tgh = _embeddings(n, m)
    Tg, R, N, O = D.g.tensor, D.rho, D.nu, D.omega
    fg, sg = pair_split(n)
    fh, sh = pair_split(m)
    sel = "Xi,Xj"

    varpi = QArray.einsum(f"{sel},Yk,Yl,ijko,lot->XYt", fg, sg, fg, sg, O, Tgh) * -1 + QArray.einsum(
        f"{sel},Yk,Yl,ijlo,kot->XYt", fg, sg, fg, sg, O, Tgh
    )
    l_wedge = QArray.einsum(f"{sel},Qc,Qd,ijkc,kdt->XtQ", fg, sg, fh, sh, R, Wh) + QArray.einsum(
        f"{sel},Qc,Qd,ckt,ijkd->XtQ", fg, sg, fh, sh, Wh, R
    )
    l_tensor = (
        QArray.einsum(f"{sel},ijkq,qet->Xtke", fg, sg, Tg, Tgh)
        + QArray.einsum(f"{sel},ijko,oet->Xtke", fg, sg, O, Wh)
        + QArray.einsum(f"{sel},kot,ijoe->Xtke", fg, sg, Tgh, R)
    )
    r_wedge = QArray.einsum(f"{sel},Qc,Qd,jot,icdo->XtQ", fg, sg, fh, sh, Tgh, N) * -1 + QArray.einsum(
        f"{sel},Qc,Qd,iot,jcdo->XtQ", fg, sg, fh, sh, Tgh, N
    )
    r_tensor = QArray.einsum(f"{sel},jot,kioe->Xtke", fg, sg, Tgh, R) - QArray.einsum(
        f"{sel},iot,kjoe->Xtke", fg, sg, Tgh, R
    )
    left = _from_blocks(
        (K, S, S),
        [((slice(None), slice(None), slice(0, P)), l_wedge), ((slice(None), slice(None), slice(P, S)), l_tensor.reshape(K, S, n * m))],
    )
    right = _from_blocks(
        (K, S, S),
        [((slice(None), slice(None), slice(0, P)), r_wedge), ((slice(None), slice(None), slice(P, S)), r_tensor.reshape(K, S, n * m))],
    )
    fiber = LeibnizAlgebra(w_space(D), _w_bracket_tensor(D))
    return LeibnizExtensionDatum(fundamental_leibniz(D.g), fiber, left, right, varpi)


# slot kinds per condition: 'k' for base arguments, 's' for fiber arguments
LEIBNIZ_CONDITIONS = {
    "l-der": "kss",
    "r-der": "kss",
    "left-center-1": "kss",
    "rep-1": "kks",
    "rep-2": "kks",
    "left-center-2": "kks",
    "cocycle": "kkk",
}


def leibniz_condition_tensors(E: LeibnizExtensionDatum) -> dict[str, QArray]:
    Bk, Bs = E.base.tensor, E.fiber.tensor
    L, Rr, V = E.left, E.right, E.varpi
    lr = L + Rr
    e = QArray.einsum
    return {
        "l-der": e("abk,xok->xabo", Bs, L) - e("xka,kbo->xabo", L, Bs) - e("xkb,ako->xabo", L, Bs),
        "r-der": e("xok,abk->xabo", Rr, Bs) - e("xkb,ako->xabo", Rr, Bs) + e("xka,bko->xabo", Rr, Bs),
        "left-center-1": e("xka,kbo->xabo", lr, Bs),
        "rep-1": e("xok,ykb->xybo", L, L)
        - e("yok,xkb->xybo", L, L)
        - e("xym,mob->xybo", Bk, L)
        - e("xyk,kbo->xybo", V, Bs),
        "rep-2": e("xok,ykb->xybo", L, Rr)
        - e("yok,xkb->xybo", Rr, L)
        - e("xym,mob->xybo", Bk, Rr)
        - e("bko,xyk->xybo", Bs, V),
        "left-center-2": e("yok,xka->xyao", Rr, lr),
        "cocycle": e("xok,yzk->xyzo", L, V)
        - e("yok,xzk->xyzo", L, V)
        - e("zok,xyk->xyzo", Rr, V)
        - e("xym,mzo->xyzo", Bk, V)
        + e("yzm,xmo->xyzo", Bk, V)
        - e("xzm,ymo->xyzo", Bk, V),
    }


def leibniz_extension_defects(E: LeibnizExtensionDatum) -> CheckReport:
    """The seven compatibility conditions, then the Leibniz rule on base and fiber."""
    k, s = E.base.space, E.fiber.space
    verdicts = []
    for name, t in leibniz_condition_tensors(E).items():
        hit = t.first_nonzero()
        if hit is None:
            verdicts.append(Verdict(True, name))
            continue
        idx = hit[:-1]
        labels = tuple((k if kind == "k" else s).basis[i] for kind, i in zip(LEIBNIZ_CONDITIONS[name], idx))
        verdicts.append(Verdict(False, name, labels, _vector_from_row(s, t[idx])))
    for name, alg in (("base", E.base), ("fiber", E.fiber)):
        v = is_leibniz(alg)
        verdicts.append(Verdict(v.ok, name, v.witness, v.defect))
    return CheckReport(tuple(verdicts))


def assemble_leibniz_extension(E: LeibnizExtensionDatum) -> LeibnizAlgebra:
    """``[x + a, y + b] = [x, y] + varpi(x, y) + l_x b + r_y a + [a, b]`` on ``W + base``."""
    K, S = E.base.dim, E.fiber.dim
    T = S + K
    space = Space(f"{E.fiber.name}+{E.base.name}", E.fiber.space.basis + E.base.space.basis)
    fib, base = slice(0, S), slice(S, T)
    tensor = _from_blocks(
        (T, T, T),
        [
            ((fib, fib, fib), E.fiber.tensor),
            ((base, base, base), E.base.tensor),
            ((base, base, fib), E.varpi),
            ((base, fib, fib), E.left.transpose(0, 2, 1)),
            ((fib, base, fib), E.right.transpose(2, 0, 1)),
        ],
    )
    return LeibnizAlgebra(space, tensor)


def transport_indices(n: int, m: int) -> list[int]:
    """Position in ``W + wedge2(g)`` of each canonical pair of ``g + h``.

    Mixed pairs ``x_i ^ u_a`` go to ``x_i (x) u_a`` with sign +1, so the
    transport is a plain permutation.
    """
    P = len(pairs(m))
    S = P + n * m
    g_pairs, h_pairs = pair_index(n), pair_index(m)
    out = []
    for i, j in pairs(n + m):
        if j < n:
            out.append(S + g_pairs[(i, j)])
        elif i < n:
            out.append(P + i * m + (j - n))
        else:
            out.append(h_pairs[(i - n, j - n)])
    return out


def fundamental_oracle_check(D: ExtensionDatum) -> Verdict:
    """Compare the assembled extension with the fundamental algebra of ``g + h``, entry by entry."""
    _require_certified(D)
    assembled = assemble_leibniz_extension(build_l_r_varpi(D))
    direct = fundamental_leibniz(extension_bracket(D))
    perm = transport_indices(D.g.dim, D.h.dim)
    T = len(perm)
    moved = np.zeros((T, T, T), dtype=object)
    moved[...] = 0
    src = direct.tensor.num
    inv = np.empty(T, dtype=np.int64)
    inv[perm] = np.arange(T)
    if T:
        moved = src[np.ix_(inv, inv, inv)]
    transported = QArray(moved, direct.tensor.den)
    diff = transported - assembled.tensor
    hit = diff.first_nonzero()
    if hit is None:
        return Verdict(True, "fundamental")
    a, b, _ = hit
    labels = (assembled.space.basis[a], assembled.space.basis[b])
    return Verdict(False, "fundamental", labels, _vector_from_row(assembled.space, diff[a, b]))
