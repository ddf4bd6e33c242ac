"""Brute-force reference implementations.

Plain loops over Fractions.  Nothing here touches the package's tensor code;
inputs are raw structure constants pulled out with ``to_fractions`` or built
by hand.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

Z = Fraction(0)


def perm_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class Ternary:
    """Bracket on basis vectors from canonical constants ``{(i<j<k): coeffs}``."""

    def __init__(self, n, constants):
        self.n = n
        self.c = {k: [Fraction(x) for x in v] for k, v in constants.items()}

    def basis(self, i, j, k):
        if len({i, j, k}) < 3:
            return [Z] * self.n
        key = tuple(sorted((i, j, k)))
        s = perm_sign((i, j, k))
        return [s * x for x in self.c.get(key, [Z] * self.n)]

    def __call__(self, x, y, z):
        out = [Z] * self.n
        support = [[i for i, c in enumerate(v) if c] for v in (x, y, z)]
        for i, j, k in product(*support):
            coef = x[i] * y[j] * z[k]
            for l, v in enumerate(self.basis(i, j, k)):
                out[l] += coef * v
        return out


def unit(n, i):
    return [Fraction(int(t == i)) for t in range(n)]


def add(*vs):
    return [sum(col, Z) for col in zip(*vs)]


def sub(a, b):
    return [x - y for x, y in zip(a, b)]


def fi_scan(br: Ternary):
    """First basis 5-tuple (lexicographic) with nonzero FI defect, or None."""
    n = br.n
    e = [unit(n, i) for i in range(n)]
    for a, b, c, d, f in product(range(n), repeat=5):
        lhs = br(e[a], e[b], br(e[c], e[d], e[f]))
        rhs = add(
            br(br(e[a], e[b], e[c]), e[d], e[f]),
            br(e[c], br(e[a], e[b], e[d]), e[f]),
            br(e[c], e[d], br(e[a], e[b], e[f])),
        )
        defect = sub(lhs, rhs)
        if any(defect):
            return (a, b, c, d, f), defect
    return None


def leibniz_scan(table, n):
    """``table[i][j]`` is the coefficient list of ``[e_i, e_j]``; returns the first failing triple."""

    def br(x, y):
        out = [Z] * n
        for i, j in product(range(n), repeat=2):
            if x[i] * y[j]:
                for k in range(n):
                    out[k] += x[i] * y[j] * table[i][j][k]
        return out

    e = [unit(n, i) for i in range(n)]
    for a, b, c in product(range(n), repeat=3):
        defect = sub(br(e[a], br(e[b], e[c])), add(br(br(e[a], e[b]), e[c]), br(e[b], br(e[a], e[c]))))
        if any(defect):
            return (a, b, c), defect
    return None


def extension_constants(gc, hc, n, m, rho, nu, omega):
    """Canonical constants of the bracket on ``g + h`` (g first), term by term.

    ``rho(a, b, k)``, ``nu(a, j, k)`` and ``omega(a, b, c)`` return coefficient
    lists in ``h`` for basis arguments.
    """
    G, H = Ternary(n, gc), Ternary(m, hc)
    N = n + m

    def split(i):
        return ("g", i) if i < n else ("h", i - n)

    def value(i, j, k):
        # [x1+u1, x2+u2, x3+u3] on three basis vectors
        out = [Z] * N
        args = [split(t) for t in (i, j, k)]
        xs = [unit(n, t) if s == "g" else [Z] * n for s, t in args]
        us = [unit(m, t) if s == "h" else [Z] * m for s, t in args]

        def lin_rho(x, y, u):
            r = [Z] * m
            for a, b in product(range(n), repeat=2):
                if x[a] * y[b] and a != b:
                    sgn = 1 if a < b else -1
                    lo, hi = min(a, b), max(a, b)
                    for k2 in range(m):
                        if u[k2]:
                            for o, v in enumerate(rho(lo, hi, k2)):
                                r[o] += sgn * x[a] * y[b] * u[k2] * v
            return r

        def lin_nu(x, u, w):
            r = [Z] * m
            for a in range(n):
                for j2, k2 in product(range(m), repeat=2):
                    if x[a] * u[j2] * w[k2] and j2 != k2:
                        sgn = 1 if j2 < k2 else -1
                        for o, v in enumerate(nu(a, min(j2, k2), max(j2, k2))):
                            r[o] += sgn * x[a] * u[j2] * w[k2] * v
            return r

        def lin_omega(x, y, z):
            r = [Z] * m
            for a, b, c in product(range(n), repeat=3):
                coef = x[a] * y[b] * z[c]
                if coef and len({a, b, c}) == 3:
                    s = perm_sign((a, b, c))
                    for o, v in enumerate(omega(*sorted((a, b, c)))):
                        r[o] += s * coef * v
            return r

        x1, x2, x3 = xs
        u1, u2, u3 = us
        gpart = G(x1, x2, x3)
        hpart = add(
            lin_omega(x1, x2, x3),
            lin_rho(x1, x2, u3), lin_rho(x2, x3, u1), lin_rho(x3, x1, u2),
            lin_nu(x1, u2, u3), lin_nu(x2, u3, u1), lin_nu(x3, u1, u2),
            H(u1, u2, u3),
        )
        out[:n] = gpart
        out[n:] = hpart
        return out

    consts = {}
    for i, j, k in combinations(range(N), 3):
        v = value(i, j, k)
        if any(v):
            consts[(i, j, k)] = v
    return consts


def datum_functions(D):
    """``rho``, ``nu``, ``omega`` callables read from a datum's raw tables."""
    R, Nu, O = D.rho.to_fractions(), D.nu.to_fractions(), D.omega.to_fractions()
    m = D.h.dim
    return (
        lambda a, b, k: [R[a, b, o, k] for o in range(m)],
        lambda a, j, k: [Nu[a, j, k, o] for o in range(m)],
        lambda a, b, c: [O[a, b, c, o] for o in range(m)],
    )


def fundamental_table(br: Ternary):
    """``[x1^x2, y1^y2] = [x1,x2,y1]^y2 + y1^[x1,x2,y2]`` in the canonical pair basis."""
    n = br.n
    prs = list(combinations(range(n), 2))
    index = {p: r for r, p in enumerate(prs)}
    P = len(prs)

    def wedge(u, v):
        out = [Z] * P
        for (i, j), r in index.items():
            out[r] = u[i] * v[j] - u[j] * v[i]
        return out

    table = [[None] * P for _ in range(P)]
    for r, (a, b) in enumerate(prs):
        for s, (c, d) in enumerate(prs):
            ea, eb, ec, ed = (unit(n, t) for t in (a, b, c, d))
            table[r][s] = add(wedge(br(ea, eb, ec), ed), wedge(ec, br(ea, eb, ed)))
    return table


def pair_list(n):
    return list(combinations(range(n), 2))


def wedge_coordinates(u, v, n):
    return [u[i] * v[j] - u[j] * v[i] for i, j in pair_list(n)]


def cochain_evaluator(table, degree, n, m):
    """Multilinear evaluation of a raw cochain table on pair-coordinate slots and a vector."""
    P = len(pair_list(n))

    def alpha(slots, z):
        out = [Z] * m
        for idx in product(range(P), repeat=degree):
            coef = Fraction(1)
            for s, r in zip(slots, idx):
                coef *= s[r]
                if not coef:
                    break
            if not coef:
                continue
            for k in range(n):
                if z[k]:
                    for o in range(m):
                        out[o] += coef * z[k] * table[idx + (k, o)]
        return out

    return alpha


def coboundary_table(br: Ternary, rho, alpha, p, m):
    """``(delta alpha)`` on canonical basis arguments, straight from the defining sum.

    ``rho(x, y, v)`` acts on vectors; ``alpha(slots, z)`` evaluates a
    ``(p-1)``-slot cochain.  Returns ``{(pair positions..., k): coeffs}``.
    """
    n = br.n
    prs = pair_list(n)
    e = [unit(n, i) for i in range(n)]

    def fund(X, Y):
        (a, b), (c, d) = X, Y
        return add(
            wedge_coordinates(br(e[a], e[b], e[c]), e[d], n),
            wedge_coordinates(e[c], br(e[a], e[b], e[d]), n),
        )

    def coords(X):
        return [Fraction(int(q == X)) for q in prs]

    out = {}
    for idx in product(range(len(prs)), repeat=p):
        X = [prs[r] for r in idx]
        for k in range(n):
            z = e[k]
            total = [Z] * m
            for j in range(1, p + 1):
                for kk in range(j + 1, p + 1):
                    slots = [coords(X[t - 1]) for t in range(1, p + 1) if t != j]
                    slots[kk - 2] = fund(X[j - 1], X[kk - 1])
                    total = add(total, [(-1) ** j * v for v in alpha(slots, z)])
            for j in range(1, p + 1):
                slots = [coords(X[t - 1]) for t in range(1, p + 1) if t != j]
                a, b = X[j - 1]
                total = add(total, [(-1) ** j * v for v in alpha(slots, br(e[a], e[b], z))])
                total = add(total, [(-1) ** (j + 1) * v for v in rho(e[a], e[b], alpha(slots, z))])
            head = [coords(X[t]) for t in range(p - 1)]
            xp, yp = (e[t] for t in X[-1])
            tail = add(rho(yp, z, alpha(head, xp)), rho(z, xp, alpha(head, yp)))
            total = add(total, [(-1) ** (p + 1) * v for v in tail])
            out[idx + (k,)] = total
    return out


def rho_function(R_table, n, m):
    """``rho(x, y, v)`` on vectors from a raw ``R[a, b, out, in]`` table."""

    def rho(x, y, v):
        out = [Z] * m
        for a, b in product(range(n), repeat=2):
            if x[a] and y[b]:
                for i in range(m):
                    if v[i]:
                        for o in range(m):
                            out[o] += x[a] * y[b] * v[i] * R_table[a, b, o, i]
        return out

    return rho
