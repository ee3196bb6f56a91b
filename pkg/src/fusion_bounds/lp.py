"""Exact two-phase tableau simplex over the rationals.

Solves ``min c.x  s.t.  A x = b, x >= 0`` with Bland's rule, so it always
terminates.  Everything is :class:`fractions.Fraction`; there are no
tolerances anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None
    # Optimal dual y (A^T y <= c, b.y = value) when optimal; a Farkas
    # certificate (A^T y <= 0, b.y > 0) when infeasible.
    y: tuple[Fraction, ...] | None = None


class _Tableau:
    def __init__(self, A, b):
        m, n = len(A), len(A[0]) if A else 0
        self.m, self.n = m, n
        # columns 0..n-1 structural, n..n+m-1 artificial
        self.rows = []
        self.sign = []
        for i in range(m):
            s = -1 if b[i] < 0 else 1
            self.sign.append(s)
            row = [Fraction(s * v) for v in A[i]] + [Fraction(int(i == k)) for k in range(m)]
            row.append(Fraction(s * b[i]))
            self.rows.append(row)
        self.basis = [n + i for i in range(m)]

    def pivot(self, r, c):
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            prow = [v / p for v in prow]
            self.rows[r] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        self.basis[r] = c

    def reduced_costs(self, cost):
        # d_j = c_j - c_B B^-1 A_j
        d = list(cost) + [Fraction(0)]
        for i, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb:
                row = self.rows[i]
                for j, v in enumerate(row):
                    if v:
                        d[j] -= cb * v
        return d

    def run(self, cost, allowed):
        """Bland's rule minimisation. Returns False when unbounded."""
        while True:
            d = self.reduced_costs(cost)
            enter = next((j for j in allowed if d[j] < 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter)


def solve(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    """Minimise ``c.x`` over ``{x >= 0 : A x = b}`` exactly."""
    m = len(A)
    n = len(c)
    if m == 0:
        if any(Fraction(v) < 0 for v in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(n)), ())
    T = _Tableau(A, b)
    N = n + m
    zero = Fraction(0)
    phase1 = [zero] * n + [Fraction(1)] * m
    T.run(phase1, range(N))
    infeas = sum((T.rows[i][-1] for i, bj in enumerate(T.basis) if bj >= n), zero)
    if infeas > 0:
        d = T.reduced_costs(phase1)
        # artificial column k has reduced cost 1 - y_k
        y = tuple(T.sign[k] * (1 - d[n + k]) for k in range(m))
        return LPResult(INFEASIBLE, y=y)
    # drive zero-level artificials out of the basis where possible
    for i in range(m):
        if T.basis[i] >= n:
            row = T.rows[i]
            j = next((j for j in range(n) if row[j]), None)
            if j is not None:
                T.pivot(i, j)
    cost = [Fraction(v) for v in c] + [zero] * m
    # redundant rows keep their artificial basic at level zero; it can never
    # re-enter because artificials are excluded from ``allowed``
    if not T.run(cost, range(n)):
        return LPResult(UNBOUNDED)
    x = [zero] * N
    for i, bj in enumerate(T.basis):
        x[bj] = T.rows[i][-1]
    value = sum((cost[j] * x[j] for j in range(n)), zero)
    d = T.reduced_costs(cost)
    y = tuple(T.sign[k] * (-d[n + k]) for k in range(m))
    return LPResult(OPTIMAL, value, tuple(x[:n]), y)


def feasible(A, b) -> bool:
    """Is ``{x >= 0 : A x = b}`` non-empty?"""
    n = len(A[0]) if A else 0
    return solve(A, b, [0] * n).status != INFEASIBLE
