# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Row reduction over F_p on int64 buffers (compiled kernel)."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rref_modp(cnp.int64_t[:, ::1] a, long long p):
    """Reduce ``a`` in place to reduced row echelon form modulo ``p``.

    Entries must already lie in ``[0, p)``. Returns the pivot columns.
    """
    cdef Py_ssize_t rows = a.shape[0]
    cdef Py_ssize_t cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, v, tmp
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            for j in range(c, cols):
                if a[r, j] != 0:
                    v = (a[i, j] - f * a[r, j]) % p
                    if v < 0:
                        v += p
                    a[i, j] = v
        pivots.append(c)
        r += 1
    return pivots
