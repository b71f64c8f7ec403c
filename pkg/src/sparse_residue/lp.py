"""Exact rational linear programming (two-phase tableau simplex, Bland's rule).

Solves::

    minimize    c . z
    subject to  A z <= b,   z_j >= 0 unless j is listed in ``free``

Free variables are split as z = z+ - z-.  The tableau is dense but the
pivot update only touches the nonzero columns of the pivot row.  Entering
columns follow Dantzig's rule until a run of degenerate pivots, then Bland's
rule for the rest of the phase, which rules out cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import LPError

try:  # exact either way; gmpy2's mpq is roughly ten times faster
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction


def _q(x):
    x = Fraction(x)
    return _Q(x.numerator, x.denominator)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class LPResult:
    x: Tuple[Fraction, ...]
    value: Fraction


DEGENERATE_RUN = 20


def _pivot(T: List[List[Fraction]], basis: List[int], r: int, c: int):
    pr = T[r]
    pv = pr[c]
    if pv != 1:
        T[r] = pr = [v / pv if v else v for v in pr]
    nz = [j for j, v in enumerate(pr) if v]
    for i, row in enumerate(T):
        if i != r:
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * pr[j]
    basis[r] = c


def _simplex(T: List[List[Fraction]], basis: List[int], allowed: Sequence[bool]):
    """Minimise the objective stored in the last row (reduced costs)."""
    m = len(T) - 1
    bland = False
    run = 0
    while True:
        obj = T[-1]
        cols = [j for j in range(len(obj) - 1) if allowed[j] and obj[j] < 0]
        if not cols:
            return
        enter = cols[0] if bland else min(cols, key=lambda j: (obj[j], j))
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise LPError("linear program is unbounded")
        if best[0][0] == 0:
            run += 1
            bland = bland or run >= DEGENERATE_RUN
        else:
            run = 0
        _pivot(T, basis, best[1], enter)


def linprog_exact(
    c: Sequence, A_ub: Sequence[Sequence], b_ub: Sequence, free: Sequence[int] = ()
) -> LPResult:
    nvar = len(c)
    free = set(free)
    # column layout: split variables, then slacks, then artificials
    cols: List[Tuple[int, int]] = []  # (original index, sign)
    for j in range(nvar):
        cols.append((j, 1))
        if j in free:
            cols.append((j, -1))
    m = len(A_ub)
    nsplit = len(cols)
    rows = []
    rhs = []
    neg = []
    for i in range(m):
        row = [_q(A_ub[i][j]) * s for j, s in cols]
        bi = _q(b_ub[i])
        slack = [_Q(0)] * m
        slack[i] = _Q(1)
        if bi < 0:
            row = [-v for v in row]
            slack = [-v for v in slack]
            bi = -bi
            neg.append(i)
        rows.append(row + slack)
        rhs.append(bi)
    nart = len(neg)
    width = nsplit + m + nart
    T = []
    basis = []
    for i in range(m):
        art = [_Q(0)] * nart
        if i in neg:
            art[neg.index(i)] = _Q(1)
            basis.append(nsplit + m + neg.index(i))
        else:
            basis.append(nsplit + i)
        T.append(rows[i] + art + [rhs[i]])
    # phase 1: minimise the sum of artificials
    phase1 = [_Q(0)] * (nsplit + m) + [_Q(1)] * nart + [_Q(0)]
    for i in neg:
        phase1 = [a - b for a, b in zip(phase1, T[i])]
    T.append(phase1)
    if nart:
        _simplex(T, basis, [True] * width)
        if T[-1][-1] != 0:
            raise LPError("linear program is infeasible")
        # drive artificials out of the basis where possible
        for i in range(m):
            if basis[i] >= nsplit + m:
                j = next((j for j in range(nsplit + m) if T[i][j] != 0), None)
                if j is not None:
                    _pivot(T, basis, i, j)
    cost = [_q(c[j]) * s for j, s in cols] + [_Q(0)] * (m + nart) + [_Q(0)]
    for i in range(m):
        f = cost[basis[i]]
        if f:
            cost = [a - f * b for a, b in zip(cost, T[i])]
    T[-1] = cost
    allowed = [True] * (nsplit + m) + [False] * nart
    _simplex(T, basis, allowed)
    z = [Fraction(0)] * width
    for i in range(m):
        z[basis[i]] = _frac(T[i][-1])
    x = [Fraction(0)] * nvar
    for k, (j, s) in enumerate(cols):
        x[j] += s * z[k]
    value = sum((Fraction(c[j]) * x[j] for j in range(nvar)), Fraction(0))
    return LPResult(tuple(x), value)
