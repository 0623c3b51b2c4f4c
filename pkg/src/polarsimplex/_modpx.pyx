# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular elimination kernel (int64 entries, p below 2^31)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef long long inv_mod(long long a, long long p):
    # extended Euclid; a in (0, p)
    cdef long long t = 0, newt = 1
    cdef long long r = p, newr = a
    cdef long long q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rank_mod_p(cnp.int64_t[:, :] a, long long p):
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, v
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                v = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = v
        inv = inv_mod(a[r, c], p)
        for j in range(c, ncols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(r + 1, nrows):
            f = a[i, c]
            if f == 0:
                continue
            for j in range(c, ncols):
                v = (a[i, j] - f * a[r, j]) % p
                if v < 0:
                    v += p
                a[i, j] = v
        r += 1
    return r


def rref_mod_p(cnp.int64_t[:, :] a, long long p):
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, v
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                v = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = v
        inv = inv_mod(a[r, c], p)
        for j in range(c, ncols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(nrows):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            for j in range(c, ncols):
                v = (a[i, j] - f * a[r, j]) % p
                if v < 0:
                    v += p
                a[i, j] = v
        pivots.append(c)
        r += 1
    return np.asarray(a[:r]).copy(), pivots
