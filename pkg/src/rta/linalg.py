"""Small exact linear algebra over Q or Q(q) (row reduction only)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Return (reduced rows, pivot columns) of a matrix given as row lists."""
    m = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve(matrix: Sequence[Sequence], rhs: Sequence, zero=0):
    """One solution of ``matrix @ x = rhs`` (free variables set to zero), or None."""
    n = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [zero] * n
    for row, c in zip(red, pivots):
        x[c] = row[n]
    return x


def nullspace(matrix: Sequence[Sequence], ncols: int, zero=0, one=1):
    """Basis of the kernel of ``matrix`` (vectors of length ``ncols``)."""
    red, pivots = rref(matrix, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, c in zip(red, pivots):
            v[c] = -row[f]
        basis.append(v)
    return basis


def rank(matrix: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(matrix, ncols)[1])
