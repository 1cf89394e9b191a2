"""Small dense linear algebra over a Field, on lists of canonical ints.

Matrices are lists of row lists.  Sizes here are tiny (tens of rows), so
clarity wins over vectorization; the census hot paths in analysis use packed
integer kernels instead of this module.
"""

from __future__ import annotations

from typing import Sequence

from .galois import Field


def rref_at_columns(
    field: Field, rows: Sequence[Sequence[int]], pivot_cols: Sequence[int]
) -> list[list[int]]:
    """Gauss-Jordan reduce so pivot_cols[i] becomes the i-th standard basis column.

    Rows are reordered so that ascending pivot columns map to ascending row
    indices, with pivot entries normalized to 1.  Raises ValueError naming the
    offending column set if the pivot columns are linearly dependent.
    """
    mat = [list(r) for r in rows]
    nrows = len(mat)
    if len(pivot_cols) > nrows:
        raise ValueError("more pivot columns than rows")
    for i, col in enumerate(pivot_cols):
        pivot = next((r for r in range(i, nrows) if mat[r][col] != 0), None)
        if pivot is None:
            raise ValueError(
                f"columns {tuple(pivot_cols)} are linearly dependent (stuck at column {col})"
            )
        mat[i], mat[pivot] = mat[pivot], mat[i]
        inv = field.inv(mat[i][col])
        if inv != 1:
            mat[i] = [field.mul(inv, v) for v in mat[i]]
        for r in range(nrows):
            if r != i and mat[r][col] != 0:
                c = mat[r][col]
                mat[r] = [field.sub(a, field.mul(c, b)) for a, b in zip(mat[r], mat[i])]
    return mat


def rank(field: Field, rows: Sequence[Sequence[int]]) -> int:
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    rk = 0
    for col in range(ncols):
        pivot = next((r for r in range(rk, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rk], mat[pivot] = mat[pivot], mat[rk]
        inv = field.inv(mat[rk][col])
        for r in range(rk + 1, len(mat)):
            if mat[r][col] != 0:
                c = field.mul(mat[r][col], inv)
                mat[r] = [field.sub(a, field.mul(c, b)) for a, b in zip(mat[r], mat[rk])]
        rk += 1
        if rk == len(mat):
            break
    return rk


def solve_unique(
    field: Field, a: Sequence[Sequence[int]], b: Sequence[int]
) -> list[int] | None:
    """Solve A x = b when A has full column rank; None if rank-deficient.

    A may have more rows than columns.  Raises ValueError on an inconsistent
    system, which for erasure decoding would indicate a corrupted input.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    mat = [list(row) + [bv] for row, bv in zip(a, b)]
    rk = 0
    pivots = []
    for col in range(ncols):
        pivot = next((r for r in range(rk, nrows) if mat[r][col] != 0), None)
        if pivot is None:
            return None
        mat[rk], mat[pivot] = mat[pivot], mat[rk]
        inv = field.inv(mat[rk][col])
        if inv != 1:
            mat[rk] = [field.mul(inv, v) for v in mat[rk]]
        for r in range(nrows):
            if r != rk and mat[r][col] != 0:
                c = mat[r][col]
                mat[r] = [field.sub(x, field.mul(c, y)) for x, y in zip(mat[r], mat[rk])]
        pivots.append(col)
        rk += 1
    for r in range(rk, nrows):
        if mat[r][ncols] != 0:
            raise ValueError("inconsistent linear system")
    return [mat[i][ncols] for i in range(ncols)]
