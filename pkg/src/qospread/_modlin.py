"""Exact Gaussian elimination over the prime field Z_p.

Matrices are sequences of equal-length integer rows; all arithmetic is done
with Python ints mod p, so there is no floating point anywhere in this
module.  Row echelon forms use the first nonzero column as pivot with unit
leading entries, which makes the reduced form (and hence the canonical basis
of a row span) unique.
"""

from __future__ import annotations

from typing import Sequence


def inv_mod(a: int, p: int) -> int:
    """Inverse of a mod p (p prime)."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 is not invertible mod {p}")
    return pow(a, p - 2, p)


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[list[tuple[int, ...]], list[int]]:
    """Reduced row echelon form mod p.

    Returns (echelon_rows, pivot_columns); zero rows are dropped, so the
    rows form the canonical basis of the input's row span.
    """
    mat = [[x % p for x in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        hit = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if hit is None:
            continue
        mat[r], mat[hit] = mat[hit], mat[r]
        inv = inv_mod(mat[r][c], p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[0])


def kernel(rows: Sequence[Sequence[int]], p: int) -> list[tuple[int, ...]]:
    """Basis of the right kernel {x : M x = 0} of the matrix with these rows."""
    if not rows:
        return []
    ncols = len(rows[0])
    ech, pivots = rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-ech[r][fc]) % p
        basis.append(tuple(vec))
    return basis


def dependency(rows: Sequence[Sequence[int]], p: int) -> tuple[int, ...] | None:
    """A nonzero coefficient vector c with sum(c_i * rows_i) = 0, or None."""
    cols = [tuple(col) for col in zip(*rows)]
    ker = kernel(cols, p)
    return ker[0] if ker else None


def inverse(rows: Sequence[Sequence[int]], p: int) -> list[tuple[int, ...]] | None:
    """Inverse of a square matrix mod p, or None if singular."""
    n = len(rows)
    if n == 0:
        return []
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(rows)]
    ech, pivots = rref(aug, p)
    if len(ech) < n or pivots[:n] != list(range(n)):
        return None
    return [tuple(row[n:]) for row in ech]
