"""Modular linear algebra used inside large rank computations.

Exact rational elimination is the default everywhere in this package; the
routines here exist for the big sampled matrices where ranks are first
computed mod a word-sized prime and then certified (a full-rank modular
minor certifies the same exact rank as a lower bound, since reduction can
only drop rank).

Backend: a compiled elimination kernel (_modpx) when the extension built,
else a vectorized numpy fallback.  POLARSIMPLEX_MODP_BACKEND=numpy forces
the fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from .errors import BadReduction

# Default modulus: a 31-bit prime; a second one for independent
# certification runs.  The pool continues with more 31-bit primes for
# BadReduction retries.
DEFAULT_PRIME = 2147483629
CERT_PRIMES = (2147483629, 2147483587)
PRIME_POOL = (2147483629, 2147483587, 2147483579, 2147483563,
              2147483549, 2147483543, 2147483497, 2147483489)

# Batched integer matmuls accumulate 84-term dot products before reducing;
# 26-bit primes keep those inside int64.
MATMUL_PRIMES = (67108859, 67108837)

# 22-bit primes for the float64 panel elimination: a panel of up to 512
# accumulated products (p-1)^2 stays below 2**53, so BLAS matmul updates
# are exact.
BLOCK_PRIMES = (4194301, 4194287)


def _load_backend():
    forced = os.environ.get("POLARSIMPLEX_MODP_BACKEND", "").strip().lower()
    if forced not in ("", "numpy", "cython"):
        raise ValueError("POLARSIMPLEX_MODP_BACKEND must be numpy or cython")
    if forced != "numpy":
        try:
            from . import _modpx as backend
            return backend, "cython"
        except ImportError:
            if forced == "cython":
                raise
    from . import _modp_np as backend
    return backend, "numpy"


_backend, BACKEND = _load_backend()


def reduce_matrix(rows, p):
    """Rational matrix -> int64 numpy matrix mod p.

    Raises BadReduction when some denominator vanishes mod p.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    out = np.zeros((nrows, ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, c in enumerate(row):
            c = Fraction(c)
            den = c.denominator % p
            if den == 0:
                raise BadReduction("denominator divisible by %d" % p)
            out[i, j] = (c.numerator % p) * pow(den, p - 2, p) % p
    return out


def rank_mod_p(mat, p):
    """Rank of an int64 matrix mod p (entries reduced mod p first)."""
    a = np.array(mat, dtype=np.int64) % p
    if a.size == 0:
        return 0
    return int(_backend.rank_mod_p(a, p))


def pivots_mod_p(mat, p, panel=None):
    """Rank with pivot bookkeeping: (rank, pivot_rows, pivot_cols).

    pivot_rows are indices into the original row order, so the caller can
    recover an explicitly independent subset of its input rows.  Small
    moduli (below roughly 2**22) go through the panel elimination, where
    trailing updates are single float64 matmuls; larger ones fall back to
    a per-pivot int64 sweep.
    """
    a = np.asarray(mat)
    if a.size == 0:
        return 0, [], []
    if _panel_cap(p) >= 8:
        return _panel_elim(a, p, panel)
    return _pivots_scalar(a, p)


def rank_mod_p_fast(mat, p, panel=None):
    """rank_mod_p, but through the panel kernel when the modulus allows."""
    a = np.asarray(mat)
    if a.size == 0:
        return 0
    if _panel_cap(p) >= 8:
        return _panel_elim(a, p, panel)[0]
    return rank_mod_p(a, p)


def _panel_cap(p):
    # largest panel with panel * (p-1)^2 + p < 2**53 (exact float64 dots)
    return ((1 << 53) - p) // ((p - 1) ** 2)


def _panel_elim(mat, p, panel=None):
    """Forward elimination mod p in float64 with matmul trailing updates.

    The matrix is processed in column panels.  Within a panel, pivots are
    eliminated one at a time but only panel columns are touched, and the
    multipliers are recorded; the columns to the right of the panel are
    then updated in one triangular sweep plus one matmul.  Every dot
    product accumulates at most `panel` terms below (p-1)^2, which the
    panel cap keeps under 2**53, so all float64 arithmetic is exact.
    """
    cap = _panel_cap(p)
    if cap < 1:
        raise ValueError("modulus too large for float64 panel elimination")
    a = np.asarray(mat)
    if a.dtype == np.float64:
        a = a % p
    else:
        a = np.asarray(np.asarray(a, dtype=np.int64) % p, dtype=np.float64)
    nrows, ncols = a.shape
    panel = max(1, min(panel or 256, cap))
    idx = np.arange(nrows)
    piv_cols = []
    r = 0
    c0 = 0
    while c0 < ncols and r < nrows:
        c1 = min(ncols, c0 + panel)
        # eliminate panel columns, recording multipliers against each
        # normalized pivot; rows swap together with their multiplier rows.
        # Panel entries are left unreduced between pivots (growth is at
        # most (p-1)^2 per step, which the panel cap bounds below 2**53);
        # only the pivot column and pivot row get reduced each step.
        F = np.zeros((nrows - r, c1 - c0))
        invs = []
        rr = r
        for c in range(c0, c1):
            colv = a[rr:, c] % p
            a[rr:, c] = colv
            nz = np.nonzero(colv)[0]
            if nz.size == 0:
                continue
            i = rr + int(nz[0])
            if i != rr:
                a[[rr, i]] = a[[i, rr]]
                idx[[rr, i]] = idx[[i, rr]]
                F[[rr - r, i - r]] = F[[i - r, rr - r]]
            inv = float(pow(int(a[rr, c]), p - 2, p))
            a[rr, c:c1] = (a[rr, c:c1] % p) * inv % p
            f = a[rr + 1:, c]
            F[rr + 1 - r:, len(invs)] = f
            a[rr + 1:, c:c1] -= f[:, None] * a[rr, c:c1]
            invs.append(inv)
            piv_cols.append(c)
            rr += 1
        found = rr - r
        if found and c1 < ncols:
            # propagate to the trailing columns: triangular solve for the
            # pivot rows, then one matmul for everything below
            U = a[r:rr, c1:]
            Fp = F[:found, :found]
            for j in range(found):
                if j:
                    U[j] -= Fp[j, :j] @ U[:j]
                    U[j] %= p
                U[j] = (U[j] * invs[j]) % p
            a[rr:, c1:] = (a[rr:, c1:] - F[found:, :found] @ U) % p
        r = rr
        c0 = c1
    return r, [int(i) for i in idx[:r]], piv_cols


def _pivots_scalar(mat, p):
    """Tracked elimination for moduli too large for the float64 panels."""
    a = np.asarray(np.asarray(mat, dtype=np.int64) % p, dtype=np.int64)
    nrows, ncols = a.shape
    idx = list(range(nrows))
    piv_cols = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
            idx[r], idx[i] = idx[i], idx[r]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        rows = r + 1 + np.nonzero(a[r + 1:, c])[0]
        if rows.size:
            a[rows, c:] = (a[rows, c:] - a[rows, c][:, None] * a[r, c:]) % p
        piv_cols.append(c)
        r += 1
    return r, idx[:r], piv_cols


def rref_mod_p(mat, p):
    """Reduced row echelon form mod p.

    Returns (R, pivots): R has one row per pivot, unit pivots, zeros above
    and below.
    """
    a = np.array(mat, dtype=np.int64) % p
    if a.size == 0:
        return a.reshape(0, mat.shape[1] if hasattr(mat, "shape") else 0), []
    R, pivots = _backend.rref_mod_p(a, p)
    return R, list(pivots)


def kernel_mod_p(mat, p):
    """Basis (rows) of the right kernel mod p."""
    a = np.asarray(mat, dtype=np.int64)
    ncols = a.shape[1]
    R, pivots = rref_mod_p(a, p)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, j in enumerate(free):
        basis[k, j] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-int(R[i, j])) % p
    return basis


def modular_rank(rows, p=None):
    """Rank of an exact rational matrix after reduction mod p.

    With p=None the prime pool is tried in order, skipping primes that hit
    a denominator (BadReduction); with an explicit p the exception
    propagates.  The result is a lower bound for the exact rank, equal to
    it for all but finitely many primes.
    """
    if p is not None:
        return rank_mod_p(reduce_matrix(rows, p), p)
    last = None
    for q in PRIME_POOL:
        try:
            return rank_mod_p(reduce_matrix(rows, q), q)
        except BadReduction as exc:
            last = exc
    raise BadReduction("all primes in the pool divide some denominator") \
        from last


def matmul_mod_p(a, b, p):
    """(a @ b) mod p for int64 arrays, reduction-safe for p < 2**26."""
    if p >= 1 << 27 and max(a.shape[-1], 1) * (p - 1) * (p - 1) >= 1 << 63:
        raise ValueError("modulus too large for accumulated int64 matmul")
    return np.matmul(a % p, b % p) % p
