# cython: language_level=3
"""Compiled Gauss-Jordan elimination over the prime field F_p."""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_modp(a, long p):
    """Reduced row echelon form of ``a`` over F_p; returns ``(R, pivots)``."""
    cdef cnp.ndarray[i64, ndim=2] m = np.array(a, dtype=np.int64, copy=True) % p
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, f
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                f = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = f
        inv = _inv(m[r, c], p)
        for j in range(cols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                for j in range(cols):
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
        pivots.append(c)
        r += 1
    return m, pivots
