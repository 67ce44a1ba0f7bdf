"""Rank computations over Q (exact), floats (thresholded) and prime fields."""

import numpy as np

__all__ = ["DEFAULT_PIVOT_TOL", "exact_rank", "float_rank", "modp_rank", "rank", "stack"]

DEFAULT_PIVOT_TOL = 1e-9


def exact_rank(matrix):
    """Rank of a matrix of exact rationals by fraction-free-free Gaussian elimination."""
    a = np.asarray(matrix, dtype=object)
    rows, cols = a.shape
    m = [list(a[i]) for i in range(rows)]
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        for i in range(r + 1, rows):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def float_rank(matrix, tol=DEFAULT_PIVOT_TOL):
    """Numerical rank: singular values at or below ``tol`` count as zero."""
    a = np.asarray(matrix, dtype=float)
    if a.size == 0:
        return 0
    return int(np.linalg.matrix_rank(a, tol=tol))


def modp_rank(matrix, p):
    """Rank over the prime field F_p of an integer matrix."""
    a = np.asarray(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    m = [[int(x) for x in a[i]] for i in range(rows)]
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], p - 2, p)
        for i in range(r + 1, rows):
            if m[i][c]:
                f = m[i][c] * inv % p
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def rank(matrix, *, tol=DEFAULT_PIVOT_TOL, modulus=None):
    """Dispatch on the entry type: object arrays are exact, float arrays use ``tol``."""
    if modulus is not None:
        return modp_rank(matrix, modulus)
    a = np.asarray(matrix)
    if a.dtype == object:
        return exact_rank(a)
    if np.issubdtype(a.dtype, np.integer):
        return exact_rank(a.astype(object))
    return float_rank(a, tol)


def stack(blocks, dtype):
    """``np.block`` that keeps explicit zero-size shapes."""
    rows = [np.concatenate([np.asarray(b, dtype=dtype) for b in row], axis=1) for row in blocks]
    return np.concatenate(rows, axis=0)
