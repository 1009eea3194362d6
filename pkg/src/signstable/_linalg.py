"""Small exact matrix helpers over ints and Fractions.

Matrices are tuples of row tuples. Everything here is exact; nothing
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple, ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A: Matrix, x: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def submatrix(A: Matrix, m: int) -> Matrix:
    """Leading m x m block."""
    return tuple(tuple(row[:m]) for row in A[:m])


def permutation_matrix(images: Sequence[int]) -> Matrix:
    """P with P[images[j]][j] = 1, so that (P x)[images[j]] = x[j]."""
    n = len(images)
    P = [[0] * n for _ in range(n)]
    for j, i in enumerate(images):
        P[i][j] = 1
    return as_matrix(P)


def det(A: Matrix) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    M = [[Fraction(v) for v in row] for row in A]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return d


def inverse(A: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan; raises ValueError if singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [v / piv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return tuple(tuple(_normalize(v) for v in row[n:]) for row in M)


def _normalize(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def normalize(A: Matrix) -> Matrix:
    """Turn integral Fractions into ints so matrices compare and print cleanly."""
    return tuple(tuple(_normalize(v) for v in row) for row in A)
