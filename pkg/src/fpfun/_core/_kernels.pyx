# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular linear algebra kernels.

Same algorithms as fpfun._core.kernels_py, restricted to int64 arrays and
p < 2**31; results are bit-identical to the pure-Python fallback.
"""

import numpy as np


cdef long long inv_mod(long long a, long long p):
    # extended Euclid; a is nonzero mod p, p prime
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt; t = newt; newt = tmp
        tmp = r - q * newr; r = newr; newr = tmp
    if t < 0:
        t += p
    return t


def rref(a, long long p):
    """Reduced row echelon form; returns (new array, pivot column list)."""
    m_arr = np.array(a, dtype=np.int64, copy=True, order="C")
    cdef long long[:, ::1] m = m_arr
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef long long inv, f, tmp
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if m[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(ncols):
                tmp = m[r, j]; m[r, j] = m[pr, j]; m[pr, j] = tmp
        inv = inv_mod(m[r, c], p)
        for j in range(ncols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(nrows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                for j in range(ncols):
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
                    if m[i, j] < 0:
                        m[i, j] += p
        pivots.append(c)
        r += 1
    return m_arr, pivots


def matmul(a, b, long long p):
    """Exact a @ b mod p."""
    a_arr = np.ascontiguousarray(a, dtype=np.int64)
    b_arr = np.ascontiguousarray(b, dtype=np.int64)
    cdef const long long[:, ::1] am = a_arr
    cdef const long long[:, ::1] bm = b_arr
    cdef Py_ssize_t n = am.shape[0], k = am.shape[1], l = bm.shape[1]
    out_arr = np.zeros((n, l), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, t
    cdef long long acc
    for i in range(n):
        for j in range(l):
            acc = 0
            for t in range(k):
                acc = (acc + am[i, t] * bm[t, j]) % p
            out[i, j] = acc
    return out_arr
