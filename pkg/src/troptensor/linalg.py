"""Small dense linear algebra over :class:`fractions.Fraction`."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass
class ExactSolve:
    consistent: bool
    rank: int
    ncols: int
    # particular solution with free variables set to zero; None if inconsistent
    solution: Optional[list[Fraction]]

    @property
    def unique(self) -> bool:
        return self.consistent and self.rank == self.ncols


def rref(rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form of an augmented matrix.

    Returns ``(matrix, pivot_columns)``; the last column is the right-hand side.
    """
    M = [[Fraction(v) for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(M)) if M[k][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for k in range(len(M)):
            if k != r and M[k][c] != 0:
                f = M[k][c]
                M[k] = [a - f * b for a, b in zip(M[k], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def solve(A: Sequence[Sequence], b: Sequence) -> ExactSolve:
    ncols = len(A[0]) if A else 0
    M, pivots = rref([list(row) + [bi] for row, bi in zip(A, b)], ncols)
    rank = len(pivots)
    for row in M[rank:]:
        if row[-1] != 0:
            return ExactSolve(False, rank, ncols, None)
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = M[r][-1]
    return ExactSolve(True, rank, ncols, x)


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    ncols = len(A[0])
    _, pivots = rref([list(row) + [0] for row in A], ncols)
    return len(pivots)
