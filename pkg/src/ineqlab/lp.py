"""Exact rational phase-one simplex for ``A x = b, x >= 0``.

Internal to the prover. The outcome is either a feasible basic solution or a
Farkas vector ``r`` with ``r.A >= 0`` column-wise and ``r.b < 0``. Pivoting
follows Bland's rule, so runs are deterministic and never cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class FeasibilityResult:
    feasible: bool
    x: list[Fraction] | None = None
    farkas: list[Fraction] | None = None
    pivots: int = 0


def solve_feasibility(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction],
                      max_pivots: int = 100_000) -> FeasibilityResult:
    """Decide ``A x = b, x >= 0`` exactly.

    ``A`` is given as dense rows (one per equation). Artificial columns are
    kept in the tableau throughout: their reduced costs carry the phase-one
    dual, from which the Farkas vector is read.
    """
    m = len(A)
    ncols = len(A[0]) if m else 0
    total = ncols + m
    sign = [(-1 if bi < 0 else 1) for bi in b]

    # tableau rows: [A_row | identity | rhs], sign-normalized so rhs >= 0
    rows: list[list[Fraction]] = []
    for i in range(m):
        s = sign[i]
        row = [Fraction(v) * s if v else ZERO for v in A[i]]
        row.extend(ONE if k == i else ZERO for k in range(m))
        row.append(Fraction(b[i]) * s)
        rows.append(row)
    basis = [ncols + i for i in range(m)]

    # phase-one objective: minimize the sum of artificials
    cost = [ZERO] * (total + 1)
    for row in rows:
        for j in range(ncols):
            if row[j]:
                cost[j] -= row[j]
        cost[total] -= row[total]

    pivots = 0
    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][total] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen: the phase-one objective is bounded below by zero
            raise ArithmeticError("phase-one objective unbounded")
        _pivot(rows, cost, leave, enter)
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("pivot limit exceeded")

    if cost[total] == 0:
        x = [ZERO] * ncols
        for i, j in enumerate(basis):
            if j < ncols:
                x[j] = rows[i][total]
        return FeasibilityResult(True, x=x, pivots=pivots)

    # reduced cost of artificial i is 1 - y_i; r = -D y
    farkas = [-(ONE - cost[ncols + i]) * sign[i] for i in range(m)]
    return FeasibilityResult(False, farkas=farkas, pivots=pivots)


def _pivot(rows: list[list[Fraction]], cost: list[Fraction], r: int, c: int) -> None:
    prow = rows[r]
    piv = prow[c]
    if piv != 1:
        inv = 1 / piv
        for k, v in enumerate(prow):
            if v:
                prow[k] = v * inv
    nz = [k for k, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f:
            for k in nz:
                row[k] -= f * prow[k]
    f = cost[c]
    if f:
        for k in nz:
            cost[k] -= f * prow[k]
