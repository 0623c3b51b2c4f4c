"""Vectorized numpy fallback for the modular elimination kernel.

Entries are int64 in [0, p); p is at most 31 bits so products fit int64.
"""

import numpy as np


def rank_mod_p(a, p):
    """In-place forward elimination; a is an int64 array mod p."""
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = np.nonzero(a[r + 1:, c])[0]
        if below.size:
            rows = r + 1 + below
            f = a[rows, c][:, None]
            a[rows, c:] = (a[rows, c:] - f * a[r, c:][None, :]) % p
        r += 1
    return r


def rref_mod_p(a, p):
    """Gauss-Jordan elimination; returns (R, pivots) with R = pivot rows."""
    nrows, ncols = a.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            f = a[others, c][:, None]
            a[others, c:] = (a[others, c:] - f * a[r, c:][None, :]) % p
        pivots.append(c)
        r += 1
    return a[:r].copy(), pivots
