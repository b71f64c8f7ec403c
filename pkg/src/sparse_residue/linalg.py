"""Fraction-free (Bareiss) row echelon form over an exact-division ring.

The ring is either Q (entries ``Fraction``) or Q[params] (entries
:class:`~sparse_residue.exact.MPoly`).  Every intermediate entry is a minor
of the input, so each division by the previous pivot is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .exact import MPoly


def _exquo(a, b):
    if isinstance(a, MPoly):
        return a.exquo(b)
    return a / b


def _size(a) -> int:
    if isinstance(a, MPoly):
        return len(a.terms)
    a = Fraction(a)
    return a.numerator.bit_length() + a.denominator.bit_length()


def _nonzero(a) -> bool:
    return bool(a.terms) if isinstance(a, MPoly) else a != 0


@dataclass
class Echelon:
    """Result of :func:`bareiss_echelon` on an augmented matrix ``[A | b]``."""

    rows: List[list]          # echelon rows, each of length ncols + 1
    pivots: List[int]         # pivot column of each of the first ``rank`` rows
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def consistent(self) -> bool:
        return all(not _nonzero(r[-1]) for r in self.rows[self.rank:])

    @property
    def det(self):
        """Last pivot: the leading rank x rank minor on the pivot columns."""
        return self.rows[self.rank - 1][self.pivots[-1]] if self.pivots else None


def bareiss_echelon(matrix: Sequence[Sequence], rhs: Sequence, one) -> Echelon:
    """Row-echelon form of ``[matrix | rhs]``, pivoting columns left to right.

    Within a column the pivot is the nonzero entry of smallest size (term
    count for polynomials); ties go to the row with fewer nonzeros, then to
    the lower row index.
    """
    m = [list(row) + [b] for row, b in zip(matrix, rhs)]
    nrows = len(m)
    ncols = len(matrix[0]) if nrows else 0
    prev = one
    r = 0
    pivots: List[int] = []
    zero = one - one
    for col in range(ncols):
        if r == nrows:
            break
        best = None
        for i in range(r, nrows):
            a = m[i][col]
            if _nonzero(a):
                key = (_size(a), sum(1 for x in m[i] if _nonzero(x)), i)
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            continue
        p = best[1]
        m[r], m[p] = m[p], m[r]
        piv = m[r][col]
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[col]
            if _nonzero(a):
                for j in range(col + 1, ncols + 1):
                    x = piv * row[j] - a * prow[j] if _nonzero(prow[j]) else piv * row[j]
                    row[j] = _exquo(x, prev) if _nonzero(x) else zero
            else:
                for j in range(col + 1, ncols + 1):
                    x = row[j]
                    if _nonzero(x):
                        row[j] = _exquo(piv * x, prev)
            row[col] = zero
        pivots.append(col)
        prev = piv
        r += 1
    return Echelon(m, pivots, ncols)


def back_substitute(ech: Echelon, scale):
    """Solve the pivot system with free variables 0, returning ``scale * x``.

    ``scale`` must clear every denominator of the solution (``ech.det`` does,
    by Cramer's rule); over Q pass 1.
    """
    zero = scale - scale
    x = [zero] * ech.ncols
    for k in range(ech.rank - 1, -1, -1):
        row = ech.rows[k]
        pc = ech.pivots[k]
        acc = scale * row[-1]
        for j in ech.pivots[k + 1:]:
            if _nonzero(row[j]) and _nonzero(x[j]):
                acc = acc - row[j] * x[j]
        x[pc] = _exquo(acc, row[pc]) if _nonzero(acc) else zero
    return x


def determinant(matrix: Sequence[Sequence], one):
    """Determinant of a square matrix by Bareiss elimination (with row swaps)."""
    n = len(matrix)
    if n == 0:
        return one
    m = [list(r) for r in matrix]
    sign = 1
    prev = one
    zero = one - one
    for k in range(n):
        best = None
        for i in range(k, n):
            if _nonzero(m[i][k]):
                key = (_size(m[i][k]), i)
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return zero
        p = best[1]
        if p != k:
            m[k], m[p] = m[p], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                x = piv * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = _exquo(x, prev) if _nonzero(x) else zero
            m[i][k] = zero
        prev = piv
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d
