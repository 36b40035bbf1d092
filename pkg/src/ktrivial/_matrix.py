"""Small exact integer/rational matrix helpers.

Matrices are tuples of row tuples; vectors are tuples. Entries are Python
ints (arbitrary precision) unless a function says otherwise.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def diagonal(entries: Sequence[int]) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != len(b):
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence[int]) -> Vector:
    if shape(a)[1] != len(v):
        raise ValueError(f"shape mismatch {shape(a)} x {len(v)}")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c: int, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def matpow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def trace(a: Matrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def solve_columns(basis: Matrix, targets: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    """Solve ``basis @ X == targets`` exactly for full-column-rank ``basis``.

    Raises ValueError when some target column is outside the column span.
    """
    rows, cols = shape(basis)
    ncols_t = shape(targets)[1]
    aug = [
        [Fraction(x) for x in basis[i]] + [Fraction(x) for x in targets[i]]
        for i in range(rows)
    ]
    pivot_row = 0
    pivots = []
    for c in range(cols):
        p = next((r for r in range(pivot_row, rows) if aug[r][c] != 0), None)
        if p is None:
            raise ValueError("basis does not have full column rank")
        aug[pivot_row], aug[p] = aug[p], aug[pivot_row]
        piv = aug[pivot_row][c]
        aug[pivot_row] = [x / piv for x in aug[pivot_row]]
        for r in range(rows):
            if r != pivot_row and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[pivot_row])]
        pivots.append(pivot_row)
        pivot_row += 1
    for r in range(pivot_row, rows):
        if any(aug[r][cols:]):
            raise ValueError("target not in the span of the basis")
    return tuple(tuple(aug[i][cols + j] for j in range(ncols_t)) for i in range(cols))
