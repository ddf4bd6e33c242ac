"""Non-abelian extension data on ``g + h`` and the checks that go with them.

Tensor conventions (``n = dim g``, ``m = dim h``):

* ``rho[a, b, out, in]``: ``rho(x_a, x_b)`` acting on h, skew in ``a, b``
* ``nu[a, i, j, out]``: ``nu(x_a)(v_i, v_j)``, skew in ``i, j``
* ``omega[a, b, c, out]``: ``omega(x_a, x_b, x_c)``, fully skew
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .algebra import (
    CheckReport,
    LinearMap,
    Space,
    ThreeLieAlgebra,
    Verdict,
    _vector_from_row,
    fi_tensor,
    is_morphism3,
)
from .errors import ShapeError, SpaceMismatchError
from .exact import QArray, as_scalar, is_skew, pairs, skew3_from_canonical
from .representation import disjoint_labels

# slot types and the order of the five arguments for each condition;
# 'g' slots are indexed by the letters a-e and 'h' slots by p-t
CONDITION_SLOTS = {
    "p1": "ggggg",
    "p2": "ggggh",
    "p3": "ghggg",
    "p4": "ggghh",
    "p5": "ghggh",
    "p6": "hhggg",
    "p7": "gghhh",
    "p8": "ghghh",
    "p9": "hhggh",
    "p10": "ghhhh",
    "p11": "hhghh",
}


class ExtensionDatum:
    """The maps ``rho``, ``nu`` and ``omega`` relating two ternary algebras."""

    def __init__(
        self,
        g: ThreeLieAlgebra,
        h: ThreeLieAlgebra,
        rho: QArray | None = None,
        nu: QArray | None = None,
        omega: QArray | None = None,
    ):
        n, m = g.dim, h.dim
        rho = QArray.zeros((n, n, m, m)) if rho is None else rho
        nu = QArray.zeros((n, m, m, m)) if nu is None else nu
        omega = QArray.zeros((n, n, n, m)) if omega is None else omega
        for label, table, shape, axes in (
            ("rho", rho, (n, n, m, m), (0, 1)),
            ("nu", nu, (n, m, m, m), (1, 2)),
            ("omega", omega, (n, n, n, m), (0, 1, 2)),
        ):
            if table.shape != shape:
                raise ShapeError(f"{label} table shape {table.shape}, expected {shape}")
            if not is_skew(table, axes):
                raise ShapeError(f"{label} table is not skew-symmetric where required")
        self.g, self.h = g, h
        self.rho, self.nu, self.omega = rho, nu, omega

    @classmethod
    def from_tables(
        cls,
        g: ThreeLieAlgebra,
        h: ThreeLieAlgebra,
        rho: Mapping | None = None,
        nu: Mapping | None = None,
        omega: Mapping | None = None,
    ) -> ExtensionDatum:
        """Build from canonical entries, all 0-based.

        ``rho[(a, b, k)]`` is ``rho(x_a, x_b) v_k`` with ``a < b``;
        ``nu[(a, i, j)]`` is ``nu(x_a)(v_i, v_j)`` with ``i < j``;
        ``omega[(a, b, c)]`` is ``omega(x_a, x_b, x_c)`` with ``a < b < c``.
        """
        n, m = g.dim, h.dim
        R = [[[[Fraction(0)] * m for _ in range(m)] for _ in range(n)] for _ in range(n)]
        N = [[[[Fraction(0)] * m for _ in range(m)] for _ in range(m)] for _ in range(n)]
        for (a, b, k), coeffs in (rho or {}).items():
            if not (0 <= a < b < n and 0 <= k < m):
                raise ShapeError(f"rho entry {(a, b, k)} is not canonical")
            for o, c in enumerate(_coeffs(coeffs, m)):
                R[a][b][o][k], R[b][a][o][k] = c, -c
        for (a, i, j), coeffs in (nu or {}).items():
            if not (0 <= a < n and 0 <= i < j < m):
                raise ShapeError(f"nu entry {(a, i, j)} is not canonical")
            for o, c in enumerate(_coeffs(coeffs, m)):
                N[a][i][j][o], N[a][j][i][o] = c, -c
        for key in omega or {}:
            a, b, c = key
            if not (0 <= a < b < c < n):
                raise ShapeError(f"omega entry {key} is not canonical")
        O = skew3_from_canonical(n, m, {k: _coeffs(v, m) for k, v in (omega or {}).items()})
        rho_t = QArray.from_values(R) if n and m else None
        nu_t = QArray.from_values(N) if n and m else None
        return cls(g, h, rho_t, nu_t, O)

    @classmethod
    def zero(cls, g: ThreeLieAlgebra, h: ThreeLieAlgebra) -> ExtensionDatum:
        return cls(g, h)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtensionDatum):
            return NotImplemented
        return (
            self.g == other.g
            and self.h == other.h
            and self.rho == other.rho
            and self.nu == other.nu
            and self.omega == other.omega
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"ExtensionDatum({self.g.name} by {self.h.name})"


def _coeffs(values, m: int) -> list[Fraction]:
    out = [as_scalar(c) for c in values]
    if len(out) != m:
        raise ShapeError(f"expected {m} coefficients, got {len(out)}")
    return out


def extension_space(D: ExtensionDatum) -> Space:
    return Space(f"{D.g.name}+{D.h.name}", D.g.space.basis + disjoint_labels(D.g.space, D.h.space))


def extension_bracket(D: ExtensionDatum) -> ThreeLieAlgebra:
    """The ternary bracket on ``g + h`` assembled from the datum.

    With g listed first, every canonical triple has its g arguments in front,
    so each block of the datum lands on canonical keys directly.
    """
    n, m = D.g.dim, D.h.dim
    space = extension_space(D)
    R, N, O = D.rho.to_fractions(), D.nu.to_fractions(), D.omega.to_fractions()
    zero_g = [Fraction(0)] * n
    constants: dict[tuple[int, int, int], list[Fraction]] = {}
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                g_part = D.g.constants.get((a, b, c), zero_g)
                constants[(a, b, c)] = list(g_part) + list(O[a, b, c])
            for k in range(m):
                constants[(a, b, n + k)] = zero_g + [R[a, b, o, k] for o in range(m)]
        for i, j in pairs(m):
            constants[(a, n + i, n + j)] = zero_g + list(N[a, i, j])
    for (i, j, k), c in D.h.constants.items():
        constants[(n + i, n + j, n + k)] = zero_g + list(c)
    return ThreeLieAlgebra(space, constants, name=space.name)


def _terms(out: str, *terms) -> QArray:
    total = None
    for sign, subs, ops in terms:
        t = QArray.einsum(f"{subs}->{out}", *ops)
        t = t if sign > 0 else -t
        total = t if total is None else total + t
    return total


def condition_tensors(D: ExtensionDatum) -> dict[str, QArray]:
    """Defect tensors of the eleven mixed conditions, indexed by basis tuples.

    Axis order follows the argument order of each condition, then the output.
    """
    Tg, Th = D.g.tensor, D.h.tensor
    R, N, O = D.rho, D.nu, D.omega
    return {
        "p1": _terms(
            "abcdez",
            (+1, "cdem,abmz", (Tg, O)),
            (+1, "abzk,cdek", (R, O)),
            (-1, "abcm,mdez", (Tg, O)),
            (-1, "dezk,abck", (R, O)),
            (-1, "abdm,cmez", (Tg, O)),
            (+1, "cezk,abdk", (R, O)),
            (-1, "abem,cdmz", (Tg, O)),
            (-1, "cdzk,abek", (R, O)),
        ),
        "p2": _terms(
            "abcdtz",
            (+1, "abzk,cdkt", (R, R)),
            (-1, "abcm,mdzt", (Tg, R)),
            (+1, "abck,dktz", (O, N)),
            (-1, "abdm,cmzt", (Tg, R)),
            (-1, "abdk,cktz", (O, N)),
            (-1, "cdzk,abkt", (R, R)),
        ),
        "p3": _terms(
            "aqcdez",
            (-1, "cdem,amzq", (Tg, R)),
            (+1, "cdek,aqkz", (O, N)),
            (+1, "dezk,ackq", (R, R)),
            (-1, "cezk,adkq", (R, R)),
            (+1, "cdzk,aekq", (R, R)),
        ),
        "p4": _terms(
            "abcstz",
            (+1, "abzk,cstk", (R, N)),
            (-1, "abcm,mstz", (Tg, N)),
            (-1, "abck,kstz", (O, Th)),
            (-1, "abks,cktz", (R, N)),
            (-1, "abkt,cskz", (R, N)),
        ),
        "p5": _terms(
            "aqcdtz",
            (+1, "cdkt,aqkz", (R, N)),
            (-1, "ackq,dktz", (R, N)),
            (+1, "adkq,cktz", (R, N)),
            (-1, "cdzk,aqtk", (R, N)),
        ),
        "p6": _terms(
            "pqcdez",
            (+1, "cdem,mpqz", (Tg, N)),
            (+1, "cdek,pqkz", (O, Th)),
            (-1, "dezk,cpqk", (R, N)),
            (+1, "cezk,dpqk", (R, N)),
            (-1, "cdzk,epqk", (R, N)),
        ),
        "p7": _terms(
            "abrstz",
            (+1, "rstk,abzk", (Th, R)),
            (-1, "abkr,kstz", (R, Th)),
            (-1, "abks,rktz", (R, Th)),
            (-1, "abkt,rskz", (R, Th)),
        ),
        "p8": _terms(
            "aqcstz",
            (+1, "cstk,aqkz", (N, N)),
            (+1, "ackq,kstz", (R, Th)),
            (-1, "aqsk,cktz", (N, N)),
            (-1, "aqtk,cskz", (N, N)),
        ),
        "p9": _terms(
            "pqcdtz",
            (+1, "cdkt,pqkz", (R, Th)),
            (+1, "cpqk,dktz", (N, N)),
            (-1, "dpqk,cktz", (N, N)),
            (-1, "pqtk,cdzk", (Th, R)),
        ),
        "p10": _terms(
            "aqrstz",
            (+1, "rstk,aqkz", (Th, N)),
            (-1, "aqrk,kstz", (N, Th)),
            (-1, "aqsk,rktz", (N, Th)),
            (-1, "aqtk,rskz", (N, Th)),
        ),
        "p11": _terms(
            "pqcstz",
            (+1, "cstk,pqkz", (N, Th)),
            (-1, "cpqk,kstz", (N, Th)),
            (-1, "pqsk,cktz", (Th, N)),
            (-1, "pqtk,cskz", (Th, N)),
        ),
    }


def _slot_verdict(name: str, defect: QArray, slots: str, g: Space, h: Space, out: Space) -> Verdict:
    hit = defect.first_nonzero()
    if hit is None:
        return Verdict(True, name)
    idx = hit[:-1]
    labels = tuple((g if kind == "g" else h).basis[i] for kind, i in zip(slots, idx))
    return Verdict(False, name, labels, _vector_from_row(out, defect[idx]))


def extension_defects(D: ExtensionDatum) -> CheckReport:
    """The eleven mixed conditions plus the identity on g and on h.

    ``fi(g)`` and ``fi(h)`` cover the two slot patterns the mixed conditions
    leave out, so the whole report passes exactly when the assembled bracket
    on ``g + h`` is a 3-Lie algebra.
    """
    g, h = D.g.space, D.h.space
    verdicts = [
        _slot_verdict(name, t, CONDITION_SLOTS[name], g, h, h) for name, t in condition_tensors(D).items()
    ]
    verdicts.append(_slot_verdict("fi(g)", fi_tensor(D.g.tensor), "ggggg", g, h, g))
    verdicts.append(_slot_verdict("fi(h)", fi_tensor(D.h.tensor), "hhhhh", g, h, h))
    return CheckReport(tuple(verdicts))


def _same_base(xi: LinearMap, D1: ExtensionDatum, D2: ExtensionDatum) -> None:
    if D1.g != D2.g or D1.h != D2.h:
        raise SpaceMismatchError("extension data relate different algebras")
    if xi.domain != D1.g.space or xi.codomain != D1.h.space:
        raise SpaceMismatchError("the relating map must go from g to h")


def isomorphism_tensors(xi: LinearMap, D1: ExtensionDatum, D2: ExtensionDatum) -> dict[str, QArray]:
    """Defects of the three relations; ``D2`` is the source and ``D1`` the target."""
    _same_base(xi, D1, D2)
    X = xi.matrix
    Tg, Th = D1.g.tensor, D1.h.tensor
    return {
        "iso1": D2.nu - D1.nu + QArray.einsum("ka,kqrz->aqrz", X, Th),
        "iso2": _terms(
            "abzr",
            (+1, "abzr", (D2.rho,)),
            (-1, "abzr", (D1.rho,)),
            (+1, "kb,akrz", (X, D1.nu)),
            (+1, "ka,brkz", (X, D1.nu)),
            (-1, "ka,lb,klrz", (X, X, Th)),
        ),
        "iso3": _terms(
            "abcz",
            (+1, "abcz", (D2.omega,)),
            (-1, "abcz", (D1.omega,)),
            (+1, "abzk,kc", (D1.rho, X)),
            (+1, "bczk,ka", (D1.rho, X)),
            (+1, "cazk,kb", (D1.rho, X)),
            (-1, "aklz,kb,lc", (D1.nu, X, X)),
            (-1, "bklz,kc,la", (D1.nu, X, X)),
            (-1, "cklz,ka,lb", (D1.nu, X, X)),
            (+1, "ka,lb,sc,klsz", (X, X, X, Th)),
            (-1, "abcm,zm", (Tg, X)),
        ),
    }


def is_extension_isomorphism(xi: LinearMap, D1: ExtensionDatum, D2: ExtensionDatum) -> CheckReport:
    """Check the three relations saying ``xi`` identifies the extension by ``D2`` with that by ``D1``."""
    g, h = D1.g.space, D1.h.space
    slots = {"iso1": "ghh", "iso2": "ggh", "iso3": "ggg"}
    verdicts = []
    for name, t in isomorphism_tensors(xi, D1, D2).items():
        if name == "iso2":
            # stored as [a, b, out, in]; report by argument order
            t = t.transpose(0, 1, 3, 2)
        verdicts.append(_slot_verdict(name, t, slots[name], g, h, h))
    return CheckReport(tuple(verdicts))


def theta_map(xi: LinearMap, D: ExtensionDatum) -> LinearMap:
    """``x + u -> x - xi(x) + u`` on ``g + h``."""
    n, m = D.g.dim, D.h.dim
    space = extension_space(D)
    X = xi.matrix.to_fractions()
    rows = [[Fraction(0)] * (n + m) for _ in range(n + m)]
    for i in range(n + m):
        rows[i][i] = Fraction(1)
    for k in range(m):
        for a in range(n):
            rows[n + k][a] = -X[k, a]
    return LinearMap.from_rows(space, space, rows)


def theta_morphism_check(xi: LinearMap, D1: ExtensionDatum, D2: ExtensionDatum) -> Verdict:
    """Whether ``theta`` is a bracket morphism from the ``D2`` extension to the ``D1`` extension."""
    _same_base(xi, D1, D2)
    return is_morphism3(theta_map(xi, D1), extension_bracket(D2), extension_bracket(D1))


def projection_map(D: ExtensionDatum) -> LinearMap:
    n, m = D.g.dim, D.h.dim
    rows = [[Fraction(int(i == j)) for j in range(n + m)] for i in range(n)]
    return LinearMap.from_rows(extension_space(D), D.g.space, rows)


def inclusion_map(D: ExtensionDatum) -> LinearMap:
    n, m = D.g.dim, D.h.dim
    rows = [[Fraction(int(i == n + j)) for j in range(m)] for i in range(n + m)]
    return LinearMap.from_rows(D.h.space, extension_space(D), rows)
