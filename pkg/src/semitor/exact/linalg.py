"""Exact Gaussian elimination.

Works over any exact field whose elements support ``+ - * /`` and truthiness
as a nonzero test: ``mpq`` and ``FieldElement`` both qualify.
"""

from __future__ import annotations

import math
from typing import Sequence

from .rational import mpq

__all__ = ["rref", "rank", "kernel", "solve", "integer_primitive_vector"]


def rref(matrix: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def kernel(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of the right kernel {v : M v = 0}, one vector per free column.

    Vectors are normalized so the free coordinate equals 1; this makes the
    basis canonical for a given matrix.
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        return [[mpq(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence):
    """One solution x of M x = rhs over the rationals, or None if inconsistent."""
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [mpq(0)] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[-1]
    return x


def integer_primitive_vector(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    den = 1
    for x in v:
        d = int(mpq(x).denominator)
        den = den * d // math.gcd(den, d)
    ints = [int(mpq(x) * den) for x in v]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    if g == 0:
        return tuple(ints)
    lead = next(a for a in ints if a)
    if lead < 0:
        g = -g
    return tuple(a // g for a in ints)
