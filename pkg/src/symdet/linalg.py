"""Exact linear algebra over the rationals for small dense matrices.

Matrices are plain lists of lists of ``Fraction``.  Everything here is
fraction-based Gaussian elimination; sizes in this package stay tiny
(presentation matrices and congruence transforms, n <= 10 or so), so no
fraction-free tricks are needed at this layer.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random
from typing import Sequence

from .errors import SingularMatrixError

Matrix = list[list[Fraction]]


def as_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Copy ``rows`` into a rectangular Fraction matrix, validating the shape."""
    if not rows:
        return []
    width = len(rows[0])
    out = []
    for r in rows:
        if len(r) != width:
            raise ValueError("ragged matrix: all rows must have the same length")
        out.append([Fraction(x) for x in r])
    return out


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def is_identity(m: Sequence[Sequence[Fraction]]) -> bool:
    return all(
        m[i][j] == (1 if i == j else 0) for i in range(len(m)) for j in range(len(m[i]))
    )


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matrix product shape mismatch")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    """Rank by exact Gaussian elimination."""
    work = as_fraction_matrix(m)
    if not work:
        return 0
    rows, cols = len(work), len(work[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(rows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
        if r == rows:
            break
    return r


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by exact Gaussian elimination with partial pivoting."""
    work = as_fraction_matrix(m)
    n = len(work)
    if any(len(row) != n for row in work):
        raise ValueError("determinant requires a square matrix")
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            result = -result
        result *= work[c][c]
        inv = 1 / work[c][c]
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] * inv
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return result


def random_int_matrix(rng: Random, rows: int, cols: int, bound: int) -> Matrix:
    """Uniform random integer entries in [-bound, bound]."""
    return [
        [Fraction(rng.randint(-bound, bound)) for _ in range(cols)] for _ in range(rows)
    ]


def random_invertible(rng: Random, n: int, bound: int = 5, attempts: int = 200) -> Matrix:
    """Random integer matrix with nonzero determinant, entries in [-bound, bound]."""
    for _ in range(attempts):
        m = random_int_matrix(rng, n, n, bound)
        if det(m) != 0:
            return m
    raise SingularMatrixError(
        f"failed to draw an invertible {n}x{n} integer matrix in {attempts} attempts"
    )


def random_full_column_rank(
    rng: Random, rows: int, cols: int, bound: int = 9, attempts: int = 200
) -> Matrix:
    if cols > rows:
        raise ValueError("cannot have full column rank with more columns than rows")
    for _ in range(attempts):
        m = random_int_matrix(rng, rows, cols, bound)
        if rank(m) == cols:
            return m
    raise SingularMatrixError(
        f"failed to draw a full-rank {rows}x{cols} integer matrix in {attempts} attempts"
    )
