"""Pure-Python modular linear algebra kernels.

Fallback implementations of the hot loops: reduced row echelon form and
matrix multiplication over a prime field.  The compiled Cython module
(`fpfun._core._kernels`) implements the identical algorithms; both must
produce bit-identical results so that every downstream computation is
deterministic regardless of backend.

Arrays are 2-D numpy arrays of residues in [0, p).  dtype int64 is used
when p < 2**31 (all intermediate products then fit in int64); larger
moduli use dtype object with exact Python integers.
"""

from __future__ import annotations

import numpy as np

# Largest modulus for which int64 arithmetic cannot overflow:
# |a - f*b| < p**2 must fit, so p < 2**31.
INT64_MAX_PRIME = 2**31


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with deterministic leftmost-pivot selection.

    The pivot for each column is the first row (top to bottom) with a
    nonzero entry.  Returns a new array; the input is not modified.
    """
    m = np.array(a, copy=True)
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        factors = m[:, c].copy()
        factors[r] = 0
        if np.any(factors):
            m = (m - np.outer(factors, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact a @ b mod p, chunking the inner dimension to avoid overflow."""
    if a.dtype == object or b.dtype == object:
        return (a @ b) % p if a.shape[1] else np.zeros(
            (a.shape[0], b.shape[1]), dtype=object)
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    # sum of k products, each < p**2, must stay below 2**63
    step = max(1, (2**62) // max(1, (p - 1) ** 2))
    if k <= step:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(0, k, step):
        out = (out + a[:, i:i + step] @ b[i:i + step, :]) % p
    return out
