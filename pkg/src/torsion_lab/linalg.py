"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`.  Rank, pivots and
determinants clear denominators row by row and run fraction-free (Bareiss)
elimination on the resulting integer matrix, so no intermediate fractions
are created.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)

__all__ = [
    "Matrix",
    "as_matrix",
    "zeros",
    "identity",
    "matmul",
    "transpose",
    "is_zero",
    "kron_identity",
    "columns",
    "from_columns",
    "rank_of",
    "pivot_columns",
    "determinant",
    "solve",
    "inverse",
]


def as_matrix(rows, ncols: int | None = None) -> Matrix:
    out = [[Fraction(x) for x in row] for row in rows]
    if ncols is not None and any(len(r) != ncols for r in out):
        raise ValueError("ragged matrix")
    return out


def zeros(nrows: int, ncols: int) -> Matrix:
    return [[ZERO] * ncols for _ in range(nrows)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    # inner is needed when a has no rows and b's row count is ambiguous
    if inner is None:
        inner = len(b)
    ncols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else [()] * ncols
    out = []
    for row in a:
        if len(row) != inner:
            raise ValueError("shape mismatch in matmul")
        out.append([sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt])
    return out


def transpose(a: Matrix, nrows: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(nrows or 0)]
    return [list(col) for col in zip(*a)]


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def kron_identity(a: Matrix, m: int) -> Matrix:
    """The Kronecker product a (x) I_m: entry (i, j) becomes a_ij * I_m."""
    out = []
    for row in a:
        for r in range(m):
            out.append([x if r == c else ZERO for x in row for c in range(m)])
    return out


def columns(a: Matrix, idx: Sequence[int]) -> list[list[Fraction]]:
    return [[row[j] for row in a] for j in idx]


def from_columns(cols: Sequence[Sequence[Fraction]], nrows: int) -> Matrix:
    return [[c[i] if type(c[i]) is Fraction else Fraction(c[i]) for c in cols] for i in range(nrows)]


def _clear_row(row) -> tuple[list[int], int]:
    """Scale a rational row by the lcm of its denominators; returns (ints, lcm)."""
    lcm = 1
    for x in row:
        d = x.denominator
        if d != 1:
            lcm = lcm * d // math.gcd(lcm, d)
    if lcm == 1:
        return [x.numerator for x in row], 1
    return [x.numerator * (lcm // x.denominator) for x in row], lcm


def _integer_rows(a: Matrix) -> list[list[int]]:
    return [_clear_row(row)[0] for row in a]


def _echelon(rows: list[list[int]]) -> tuple[list[int], list[list[int]]]:
    """Fraction-free forward elimination; returns pivot columns and echelon rows."""
    rows = [r[:] for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            rows[i] = [(piv * x - f * y) // prev for x, y in zip(rows[i], rows[r])]
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, rows


def pivot_columns(a: Matrix) -> list[int]:
    """Indices of the leftmost linearly independent columns of a."""
    if not a:
        return []
    return _echelon(_integer_rows(a))[0]


def rank_of(a: Matrix) -> int:
    return len(pivot_columns(a))


def determinant(a: Matrix) -> Fraction:
    """Exact determinant by Bareiss elimination; the 0x0 determinant is 1."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = 1
    rows = []
    for row in a:
        ints, lcm = _clear_row(row)
        scale *= lcm
        rows.append(ints)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            p = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            rows[k], rows[p] = rows[p], rows[k]
            sign = -sign
        piv = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            ri, rk = rows[i], rows[k]
            for j in range(k + 1, n):
                ri[j] = (piv * ri[j] - rik * rk[j]) // prev
            ri[k] = 0
        prev = piv
    return Fraction(sign * rows[n - 1][n - 1], scale)


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Solve a x = b for square invertible a (Gauss-Jordan over Fraction)."""
    n = len(a)
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def inverse(a: Matrix) -> Matrix:
    return solve(a, identity(len(a)))
