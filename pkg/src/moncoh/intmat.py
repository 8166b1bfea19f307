"""Exact arithmetic on integer matrices.

A matrix is a list of row lists of unbounded Python ints.  A matrix with
zero rows is the empty list, which loses the column count, so functions
that can meet one accept the missing dimension explicitly.  Nothing here
ever rounds: every operation is exact.
"""

from __future__ import annotations

from typing import Sequence

IntMatrix = list[list[int]]
FrozenMatrix = tuple[tuple[int, ...], ...]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def clone(m: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(row) for row in m]


def freeze(m: Sequence[Sequence[int]]) -> FrozenMatrix:
    return tuple(tuple(row) for row in m)


def num_cols(m: Sequence[Sequence[int]], fallback: int | None = None) -> int:
    if m:
        return len(m[0])
    if fallback is None:
        return 0
    return fallback


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]],
           cols_b: int | None = None) -> IntMatrix:
    """Product a @ b, skipping zero entries of ``a``.

    The skip makes products with the block-sparse differentials cheap
    while staying exact for dense inputs.  ``cols_b`` is only needed when
    ``b`` has zero rows.
    """
    cb = num_cols(b, cols_b)
    out = [[0] * cb for _ in range(len(a))]
    for i, arow in enumerate(a):
        orow = out[i]
        for k, av in enumerate(arow):
            if not av:
                continue
            brow = b[k]
            if av == 1:
                for j, bv in enumerate(brow):
                    if bv:
                        orow[j] += bv
            elif av == -1:
                for j, bv in enumerate(brow):
                    if bv:
                        orow[j] -= bv
            else:
                for j, bv in enumerate(brow):
                    if bv:
                        orow[j] += av * bv
    return out


def madd(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mneg(a: Sequence[Sequence[int]]) -> IntMatrix:
    return [[-x for x in row] for row in a]


def mscale(s: int, a: Sequence[Sequence[int]]) -> IntMatrix:
    return [[s * x for x in row] for row in a]


def transpose(m: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    c = num_cols(m, cols)
    return [[m[i][j] for i in range(len(m))] for j in range(c)]


def hstack(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(ra) + list(rb) for ra, rb in zip(a, b)]


def is_zero_matrix(m: Sequence[Sequence[int]]) -> bool:
    return all(not x for row in m for x in row)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    a = clone(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
