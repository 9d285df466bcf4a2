"""Exact rational linear algebra on small dense matrices.

Matrices are sequences of rows; vectors are sequences. Everything is done
with :class:`fractions.Fraction`, so results are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Vector = Sequence
Matrix = Sequence[Sequence]


def _frac_rows(rows: Matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    A = _frac_rows(rows)
    if not A:
        return A, []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(vectors: Matrix) -> int:
    """Rank of a family of vectors (rows)."""
    if not vectors:
        return 0
    return len(rref(vectors)[1])


def transpose(rows: Matrix) -> list[list]:
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def solve(columns: Matrix, target: Vector) -> Optional[list[Fraction]]:
    """Solve ``sum_j x_j * columns[j] == target``.

    Returns one solution (free variables set to zero) or ``None`` when the
    system is inconsistent. With no columns, only the zero target is solvable.
    """
    n = len(target)
    k = len(columns)
    if k == 0:
        return [] if all(t == 0 for t in target) else None
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    R, pivots = rref(aug)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for row, c in zip(R, pivots):
        x[c] = row[k]
    return x


def nullspace(rows: Matrix, ncols: Optional[int] = None) -> list[list[Fraction]]:
    """Basis of the right null space ``{x : rows . x = 0}``."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(rows[0])
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in zip(R, pivots):
            x[c] = -row[f]
        basis.append(x)
    return basis
