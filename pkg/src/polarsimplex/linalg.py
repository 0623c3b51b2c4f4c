"""Dense exact linear algebra over Q, list-of-lists of Fraction.

Matrices are small (at most a few hundred rows, a few thousand entries);
plain Gaussian elimination with exact rationals is the right tool.  Rows
are equations or spanning vectors depending on the caller.
"""

from __future__ import annotations

from fractions import Fraction


import math


def _copy(rows):
    return [[Fraction(c) for c in row] for row in rows]


def _int_rows(rows):
    """Clear denominators and strip content: one integer list per row."""
    out = []
    for row in rows:
        den = 1
        for c in row:
            c = Fraction(c)
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(Fraction(c) * den) for c in row]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def rref_naive(rows):
    """Straight rational Gauss-Jordan; reference implementation."""
    R = _copy(rows)
    nrows = len(R)
    ncols = len(R[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if R[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            R[r], R[pr] = R[pr], R[r]
        pv = R[r][c]
        if pv != 1:
            R[r] = [x / pv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                Rr = R[r]
                R[i] = [a - f * b for a, b in zip(R[i], Rr)]
        pivots.append(c)
        r += 1
    return R, r, pivots


def rref(rows):
    """Reduced row echelon form.

    Returns (R, rank, pivots) where R is a new matrix with unit pivots and
    zeros above and below them, and pivots lists the pivot column of each
    of the first `rank` rows.  The rref of a row space is unique, so this
    agrees with rref_naive; internally it eliminates on integer rows
    (cross-multiplied combinations, gcd-normalized) which is much faster
    than Fraction arithmetic.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    R = _int_rows(rows)
    pivots = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if R[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            R[r], R[pr] = R[pr], R[r]
        Rr = R[r]
        pv = Rr[c]
        # Bareiss step: the division by the previous pivot is exact and
        # keeps entries the size of minors instead of growing geometrically
        for i in range(r + 1, nrows):
            f = R[i][c]
            Ri = R[i]
            if f == 0:
                if pv != prev:
                    R[i] = [pv * a // prev for a in Ri]
            else:
                R[i] = [(pv * a - f * b) // prev for a, b in zip(Ri, Rr)]
        pivots.append(c)
        prev = pv
        r += 1
    # eliminate above the pivots (still integer rows)
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        Rk = R[k]
        pv = Rk[c]
        for i in range(k):
            f = R[i][c]
            if f == 0:
                continue
            Ri = R[i]
            new = [pv * a - f * b for a, b in zip(Ri, Rk)]
            g = 0
            for v in new:
                g = math.gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = [v // g for v in new]
            R[i] = new
    out = []
    for k in range(r):
        pv = R[k][pivots[k]]
        out.append([Fraction(v, pv) for v in R[k]])
    for k in range(r, nrows):
        out.append([Fraction(0)] * ncols)
    return out, r, pivots


def rank(rows):
    return rref(rows)[1]


def row_basis(rows):
    """Nonzero rows of the rref: a canonical basis of the row space."""
    R, rk, _ = rref(rows)
    return R[:rk]


def reduce_vector(R, pivots, v):
    """Residual of v after elimination against rref rows R.

    Zero residual means v lies in the row space.
    """
    v = [Fraction(c) for c in v]
    for i, c in enumerate(pivots):
        if v[c] != 0:
            f = v[c]
            Ri = R[i]
            v = [a - f * b for a, b in zip(v, Ri)]
    return v


def in_row_space(rows_rref, pivots, v):
    return all(c == 0 for c in reduce_vector(rows_rref, pivots, v))


def kernel_basis(rows, ncols):
    """Basis of {v : A v = 0} for the matrix with the given rows."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)]
                for i in range(ncols)]
    R, rk, pivots = rref(rows)
    pivset = set(pivots)
    basis = []
    for j in range(ncols):
        if j in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][j]
        basis.append(v)
    return basis


def left_kernel_basis(rows):
    """Basis of {u : u A = 0}."""
    if not rows:
        return []
    return kernel_basis(transpose(rows), len(rows))


def solve(A, b):
    """One exact solution of A x = b, or None when inconsistent."""
    if not A:
        return [] if all(c == 0 for c in b) else None
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    R, rk, pivots = rref(aug)
    ncols = len(A[0])
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = R[i][ncols]
    return x


def det(rows):
    """Determinant by Gaussian elimination over exact rationals."""
    A = _copy(rows)
    m = len(A)
    if any(len(row) != m for row in A):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    d = Fraction(1)
    for c in range(m):
        pr = None
        for i in range(c, m):
            if A[i][c] != 0:
                pr = i
                break
        if pr is None:
            return Fraction(0)
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            sign = -sign
        pv = A[c][c]
        d *= pv
        for i in range(c + 1, m):
            if A[i][c] != 0:
                f = A[i][c] / pv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return sign * d


def inverse(rows):
    """Exact inverse; raises ValueError on a singular matrix."""
    m = len(rows)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(m)]
           for i, row in enumerate(rows)]
    R, rk, pivots = rref(aug)
    if pivots[:m] != list(range(m)):
        raise ValueError("matrix is singular")
    return [row[m:] for row in R[:m]]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def identity(m):
    return [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]


def intersect_row_spaces(A, B):
    """Basis (rref rows) of rowspace(A) ∩ rowspace(B)."""
    A = row_basis(A)
    B = row_basis(B)
    if not A or not B:
        return []
    stacked = A + B
    inter = []
    for u in left_kernel_basis(stacked):
        # u = (x | y) with x A + y B = 0, so x A lies in both row spaces
        x = u[: len(A)]
        if all(c == 0 for c in x):
            continue
        vec = [Fraction(0)] * len(A[0])
        for xi, row in zip(x, A):
            if xi != 0:
                vec = [a + xi * b for a, b in zip(vec, row)]
        inter.append(vec)
    return row_basis(inter)


def same_row_space(A, B):
    RA, ra, pa = rref(A)
    RB, rb, pb = rref(B)
    return ra == rb and pa == pb and RA[:ra] == RB[:rb]
