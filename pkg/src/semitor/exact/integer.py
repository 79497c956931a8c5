"""Integer matrix helpers for lattice basis changes."""

from __future__ import annotations

import math
from typing import Sequence

__all__ = ["det", "matmul", "unimodular_inverse", "complete_to_unimodular",
           "integer_kernel_of_vector", "xgcd"]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def det(m: Sequence[Sequence]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(n) if m[0][j])


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def unimodular_inverse(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of an integer matrix with determinant +-1 via the adjugate."""
    d = det(m)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det={d})")
    n = len(m)
    if n == 1:
        return [[d]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return [[x * d for x in row] for row in adj]


def _column_reducer(v: Sequence[int]) -> list[list[int]]:
    """Unimodular V with v V = (g, 0, ..., 0), g = gcd(v) >= 0."""
    n = len(v)
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    w = list(v)
    for j in range(1, n):
        if w[j] == 0:
            continue
        g, s, t = xgcd(w[0], w[j])
        a, b = w[0] // g, w[j] // g
        # columns 0, j  <-  (s*c0 + t*cj, -b*c0 + a*cj); determinant s*a + t*b = 1
        for row in V:
            c0, cj = row[0], row[j]
            row[0], row[j] = s * c0 + t * cj, -b * c0 + a * cj
        w[0], w[j] = g, 0
    if w[0] < 0:
        for row in V:
            row[0] = -row[0]
        w[0] = -w[0]
    return V


def complete_to_unimodular(v: Sequence[int]) -> list[list[int]]:
    """Unimodular integer matrix whose first row is the primitive vector v."""
    if math.gcd(*v) != 1:
        raise ValueError(f"{tuple(v)} is not primitive")
    return unimodular_inverse(_column_reducer(v))


def integer_kernel_of_vector(w: Sequence[int]) -> list[list[int]]:
    """Z-basis of {x in Z^n : w . x = 0} for a nonzero integer vector w."""
    V = _column_reducer(w)
    n = len(w)
    return [[V[i][j] for i in range(n)] for j in range(1, n)]
