"""Pure-Python row reduction, used when the compiled kernel is unavailable."""
from __future__ import annotations

import numpy as np


def rref_modp(a: np.ndarray, p: int) -> list[int]:
    """Reduce the int64 array ``a`` in place modulo ``p``; return pivot columns."""
    rows, cols = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots


def rref_exact(a: np.ndarray) -> list[int]:
    """Reduce an object array of ``Fraction`` entries in place; return pivot columns."""
    rows, cols = a.shape
    r = 0
    pivots: list[int] = []
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
            a[[r, piv]] = a[[piv, r]]
        lead = a[r, c]
        if lead != 1:
            a[r, c:] = a[r, c:] / lead
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i, c:] = a[i, c:] - a[i, c] * a[r, c:]
        pivots.append(c)
        r += 1
    return pivots
