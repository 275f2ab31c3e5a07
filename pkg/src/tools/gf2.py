"""
Dense GF(2) linear algebra on numpy uint8 arrays.

Row operations are XORs; every function works on a private copy of its input.
"""

import numpy as np
import numpy.typing as npt

from src.tools.typing import BitMatrix


def _to_work(m: npt.ArrayLike) -> BitMatrix:
    work = np.array(m, dtype=np.int64) % 2
    return work.astype(np.uint8)


def row_echelon(m: npt.ArrayLike, n_pivot_cols: int | None = None) -> tuple[BitMatrix, list[int]]:
    """
    Row-reduce a binary matrix to reduced row echelon form.
    :param m: Binary matrix
    :param n_pivot_cols: Only the first n_pivot_cols columns may hold pivots (all columns take part in row operations)
    :return: The reduced matrix and its pivot columns (length = rank)
    """
    r = _to_work(m)
    if r.ndim != 2:
        raise ValueError(f"Expected a 2D matrix, got shape {r.shape}")
    n_rows, n_cols = r.shape
    if n_pivot_cols is None:
        n_pivot_cols = n_cols

    pivot_cols: list[int] = []
    pivot_row = 0
    for col in range(n_pivot_cols):
        if pivot_row == n_rows:
            break
        candidates = np.flatnonzero(r[pivot_row:, col])
        if len(candidates) == 0:
            continue
        found = pivot_row + int(candidates[0])
        if found != pivot_row:
            r[[pivot_row, found]] = r[[found, pivot_row]]
        others = np.flatnonzero(r[:, col])
        others = others[others != pivot_row]
        r[others] ^= r[pivot_row]
        pivot_cols.append(col)
        pivot_row += 1
    return r, pivot_cols


def rank(m: npt.ArrayLike) -> int:
    work = _to_work(m)
    if work.size == 0:
        return 0
    return len(row_echelon(work)[1])


def matmul(a: npt.ArrayLike, b: npt.ArrayLike) -> BitMatrix:
    return ((np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % 2).astype(np.uint8)


def strict_upper(m: npt.ArrayLike) -> BitMatrix:
    return np.triu(_to_work(m), k=1)


def strict_lower(m: npt.ArrayLike) -> BitMatrix:
    return np.tril(_to_work(m), k=-1)
