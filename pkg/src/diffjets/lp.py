"""Exact rational simplex (Bland's rule) for ``max c.x, A x <= b, x >= 0``
with ``b >= 0``, so the slack basis is feasible from the start."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None
    value: object | None
    pivots: int


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    nrows, ncols = len(A), len(c)
    if any(bi < 0 for bi in b):
        raise ValueError("right-hand side must be nonnegative")
    zero = mpq(0)
    # tableau rows: [x-coeffs | slack-coeffs | rhs]
    width = ncols + nrows
    T = []
    for i, row in enumerate(A):
        r = [mpq(v) for v in row] + [zero] * nrows + [mpq(b[i])]
        r[ncols + i] = mpq(1)
        T.append(r)
    # reduced costs, stored as -c so that a negative entry may enter
    z = [-mpq(v) for v in c] + [zero] * nrows + [zero]
    basis = [ncols + i for i in range(nrows)]
    pivots = 0
    while True:
        enter = next((j for j in range(width) if z[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(nrows):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return LPResult(UNBOUNDED, None, None, pivots)
        r = best[1]
        prow = T[r]
        pv = prow[enter]
        if pv != 1:
            prow = [v / pv for v in prow]
            T[r] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i in range(nrows):
            if i != r:
                f = T[i][enter]
                if f:
                    row = T[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        f = z[enter]
        for j in nz:
            z[j] -= f * prow[j]
        basis[r] = enter
        pivots += 1
    x = [zero] * ncols
    for i, j in enumerate(basis):
        if j < ncols:
            x[j] = T[i][-1]
    return LPResult(OPTIMAL, tuple(x), z[-1], pivots)
