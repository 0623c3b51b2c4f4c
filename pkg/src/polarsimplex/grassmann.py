"""Pluecker coordinates of quadric systems and sampled linear spans.

A k-dimensional space of quadrics V inside a fixed m-dimensional frame
(usually the degree-2 piece of an apolar ideal q^perp) is recorded by the
vector of maximal minors of its coordinate matrix.  The frame is pinned
once per quadric by row reduction so vectors are comparable across runs
and golden files.

Heavy ranks (the space of quadrics through the Pluecker embedding, the
span of sampled apolar systems) run modulo two primes; what makes the
results exact rather than probabilistic is that every modular rank is a
lower bound for the rational one, so matching upper and lower bounds
certify the value.  Small subsets are additionally confirmed over Q.
"""

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .apolarity import LinearSubspace, as_quadric, inverse_quadric
from .errors import (BadReduction, DomainError, NotPolynomialMap, Unstable,
                     UnsupportedQuadric)
from .modp import (BLOCK_PRIMES, MATMUL_PRIMES, PRIME_POOL, pivots_mod_p,
                   rank_mod_p_fast, reduce_matrix)
from .rings import Form, monomials
from .vps import polar_simplex_sample, standard_split_quadric

_SUBSETS = {}


def subsets(m, k):
    """(ordered list, index dict) of the k-subsets of range(m), lex order."""
    key = (m, k)
    if key not in _SUBSETS:
        seq = list(itertools.combinations(range(m), k))
        _SUBSETS[key] = (seq, {s: i for i, s in enumerate(seq)})
    return _SUBSETS[key]


# ---------------------------------------------------------------------------
# the fixed frame and coordinates in it

class _Frame:
    """A pinned ordered basis of a graded piece, with coordinate lookup."""

    def __init__(self, forms):
        forms = list(forms)
        if not forms:
            raise DomainError("empty frame")
        self.ring = forms[0].ring
        self.n = forms[0].n
        self.degree = forms[0].degree
        self.forms = forms
        self.monos = monomials(self.n, self.degree)
        M = len(self.monos)
        m = len(forms)
        aug = [list(f.vector(self.monos)) +
               [Fraction(int(i == j)) for j in range(m)]
               for i, f in enumerate(forms)]
        R, r, piv = linalg.rref(aug)
        if r < m or any(c >= M for c in piv):
            raise DomainError("frame forms are linearly dependent")
        self.size = m
        self._R = R
        self._piv = piv

    def coordinates(self, f):
        """Coordinates of f in the frame; DomainError if f is outside it."""
        if f.ring != self.ring or f.degree != self.degree:
            raise DomainError("form does not live in the frame's piece")
        v = f.vector(self.monos)
        M = len(self.monos)
        d = [v[c] for c in self._piv]
        # residual against the reduced rows certifies membership
        for j in range(M):
            s = v[j]
            for t in range(self.size):
                s -= d[t] * self._R[t][j]
            if s != 0:
                raise DomainError("form is not in the span of the frame")
        return [sum(d[t] * self._R[t][M + i] for t in range(self.size))
                for i in range(self.size)]

    def labels(self):
        return tuple(str(f) for f in self.forms)


def fixed_quadric_basis(q):
    """The pinned basis of (q^perp)_2: row-reduced against the grevlex
    monomial list, so the same quadric always yields the same frame."""
    q = as_quadric(q)
    piece = q.perp().piece(2)
    monos = monomials(q.n, 2)
    rows = [f.vector(monos) for f in piece]
    R, r, piv = linalg.rref(rows)
    ring = piece[0].ring
    return tuple(Form.from_vector(ring, q.n, 2, R[i], monos)
                 for i in range(r))


# ---------------------------------------------------------------------------
# Pluecker vectors

@dataclass(frozen=True)
class PluckerVec:
    """A point of Gr(k, m): the maximal minors of a coordinate matrix,
    listed over the lex-ordered k-subsets and scaled so the first nonzero
    entry is 1."""

    k: int
    m: int
    coords: tuple
    basis: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.coords) != math.comb(self.m, self.k):
            raise DomainError("expected %d coordinates for Gr(%d, %d)"
                              % (math.comb(self.m, self.k), self.k, self.m))
        if all(c == 0 for c in self.coords):
            raise DomainError("all maximal minors vanish")

    def coordinate(self, subset):
        seq, index = subsets(self.m, self.k)
        return self.coords[index[tuple(subset)]]

    def support(self):
        seq, _ = subsets(self.m, self.k)
        return [seq[i] for i, c in enumerate(self.coords) if c != 0]

    def as_dict(self):
        out = {"k": self.k, "m": self.m,
               "coords": [str(c) for c in self.coords]}
        if self.basis is not None:
            out["basis"] = list(self.basis)
        return out


def _canonical(minors):
    lead = next((c for c in minors if c != 0), None)
    if lead is None:
        raise DomainError("all maximal minors vanish (rank-deficient input)")
    return tuple(Fraction(c) / lead for c in minors)


def _small_det(a):
    s = len(a)
    if s == 0:
        return Fraction(1)
    if s == 1:
        return a[0][0]
    if s == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if s == 3:
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    return linalg.det(a)


def _rref_minor(R, piv, sigma):
    """det of the column submatrix R[:, sigma] of a reduced row echelon
    matrix, by Laplace expansion along its unit pivot columns."""
    sset = set(sigma)
    rows = list(range(len(piv)))
    cols = list(sigma)
    sign = 1
    for j, pc in enumerate(piv):
        if pc in sset:
            ri = rows.index(j)
            ci = cols.index(pc)
            if (ri + ci) % 2:
                sign = -sign
            rows.pop(ri)
            cols.pop(ci)
    if not rows:
        return Fraction(sign)
    return sign * _small_det([[R[i][c] for c in cols] for i in rows])


def _maximal_minors(rows):
    """All maximal minors of a full-rank k x m matrix, up to one global
    scale (row reduction multiplies every minor by the same unit)."""
    k = len(rows)
    m = len(rows[0])
    R, r, piv = linalg.rref([list(row) for row in rows])
    if r < k:
        raise DomainError("expected a %d-dimensional space, got rank %d"
                          % (k, r))
    seq, _ = subsets(m, k)
    return [_rref_minor(R, piv, sigma) for sigma in seq]


def plucker(V, basis):
    """PluckerVec of a k-dimensional subspace of an m-dimensional piece.

    V is a list of Forms (or an object with .piece, whose piece matching
    the frame degree is taken, or raw coordinate rows when basis is an
    integer m).  basis is a list of Forms fixing the frame, a Quadric
    (meaning fixed_quadric_basis), or the integer m for raw rows.
    """
    labels = None
    if isinstance(basis, int):
        rows = [[Fraction(c) for c in row] for row in V]
        if any(len(row) != basis for row in rows):
            raise DomainError("rows do not have length %d" % basis)
        m = basis
    else:
        if isinstance(basis, _Frame):
            frame = basis
        else:
            if hasattr(basis, "gram"):
                basis = fixed_quadric_basis(basis)
            frame = _Frame(basis)
        if hasattr(V, "piece"):
            V = V.piece(frame.degree)
        rows = [frame.coordinates(f) for f in V]
        m = frame.size
        labels = frame.labels()
    minors = _maximal_minors(rows)
    return PluckerVec(len(rows), m, _canonical(minors), basis=labels)


# ---------------------------------------------------------------------------
# modular elimination with row tracking

def _int_row(row):
    """Clear denominators and common factors: a coprime integer multiple."""
    row = [Fraction(c) for c in row]
    den = 1
    for c in row:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in row]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


# ---------------------------------------------------------------------------
# the space of quadrics through the Pluecker embedding

def _pair_maps(D):
    pairs = [(i, j) for i in range(D) for j in range(i, D)]
    return pairs, {pr: t for t, pr in enumerate(pairs)}


def _shuffle_rows(k, m):
    """The quadratic straightening relations among maximal minors: for a
    (k-1)-subset alpha and (k+1)-subset beta,
        sum_t (-1)^t p(alpha + beta_t) p(beta - beta_t) = 0
    on all of Gr(k, m).  Pairs with |beta - alpha| < 3 reduce to 0 = 0 and
    are skipped.  Rows are sparse: tuples of ((i, j), coeff) with i <= j
    indexing the lex pair list of quadric monomials.
    """
    seq, index = subsets(m, k)
    _, pindex = _pair_maps(len(seq))
    rows = []
    for alpha in itertools.combinations(range(m), k - 1):
        aset = set(alpha)
        for beta in itertools.combinations(range(m), k + 1):
            if len(set(beta) - aset) < 3:
                continue
            terms = {}
            for t, i in enumerate(beta):
                if i in aset:
                    continue
                swaps = sum(1 for a in alpha if a > i)
                s1 = index[tuple(sorted(alpha + (i,)))]
                s2 = index[tuple(b for b in beta if b != i)]
                key = (s1, s2) if s1 <= s2 else (s2, s1)
                terms[key] = terms.get(key, 0) + (-1) ** (t + swaps)
            row = tuple(sorted((pindex[kk], kk, c)
                               for kk, c in terms.items() if c != 0))
            if row:
                rows.append(tuple((kk, c) for _, kk, c in row))
    return rows


def _sample_planes(k, m, count, seed, check=True):
    """Deterministic stream of integer k x m matrices.

    With check=True only exact rank-k matrices are kept.  check=False
    skips the (rational) rank filter: a degenerate draw has all minors
    zero, which evaluation-side callers treat as a wasted row, so the
    filter is not worth its cost at thousands of samples.  Either way a
    longer call returns the shorter one as a prefix.
    """
    rng = random.Random("plucker:%d:%d:%d" % (k, m, seed))
    out = []
    while len(out) < count:
        mat = [[rng.randint(-9, 9) for _ in range(m)] for _ in range(k)]
        if check and linalg.rank([[Fraction(x) for x in row]
                                  for row in mat]) != k:
            continue
        out.append(mat)
    return out


def _eval_quadric(row, vec):
    """Exact value of a sparse quadric row on a minor vector."""
    return sum(c * vec[i] * vec[j] for (i, j), c in row)


@dataclass(frozen=True)
class PluckerQuadricSpace:
    """Quadrics vanishing on the image of Gr(k, m); basis rows are exact
    integer sparse vectors over the lex pair list of minor products."""

    k: int
    m: int
    dimension: int
    basis: tuple
    primes_used: tuple
    samples_used: int
    stabilized: bool

    def quadric_monomials(self):
        return math.comb(math.comb(self.m, self.k) + 1, 2)

    def as_dict(self):
        return {"k": self.k, "m": self.m, "dimension": self.dimension,
                "quadric_monomials": self.quadric_monomials(),
                "primes_used": list(self.primes_used),
                "samples_used": self.samples_used,
                "stabilized": self.stabilized}


def plucker_quadric_space(k, m, seed=0, primes=None):
    """Dimension and exact basis of the quadrics through Gr(k, m) in P^(D-1).

    Two bounds meet: the straightening relations give dimension >= r from a
    mod-p rank (a lower bound for their exact rank), and evaluation on
    sampled exact planes gives dimension <= D_2 - rank of the sample
    matrix.  Sampling is grown until both primes close the sandwich; if
    they will not, Unstable.
    """
    if not 0 < k < m:
        raise DomainError("need 0 < k < m")
    primes = tuple(primes) if primes else BLOCK_PRIMES
    seq, _ = subsets(m, k)
    D = len(seq)
    pairs, _ = _pair_maps(D)
    Dq = len(pairs)
    rel = _shuffle_rows(k, m)

    # exact spot check: a few relations vanish identically on exact planes
    spot_planes = _sample_planes(k, m, 3, seed + 7)
    spot_rng = random.Random("spot:%d:%d:%d" % (k, m, seed))
    spot_rel = rel if len(rel) <= 8 else spot_rng.sample(rel, 8)
    for mat in spot_planes:
        vec = _maximal_minors([[Fraction(x) for x in row] for row in mat])
        for row in spot_rel:
            if _eval_quadric(row, vec) != 0:
                raise AssertionError("straightening relation fails exactly")

    # lower bound: mod-p rank of the relations, tracked on the first prime
    # so the pivot rows give an explicitly independent basis
    _, pindex = _pair_maps(D)
    r_rel = None
    basis_idx = None
    for t, p in enumerate(primes):
        A = np.zeros((len(rel), Dq), dtype=np.int64)
        for i, row in enumerate(rel):
            for (a, b), c in row:
                A[i, pindex[(a, b)]] = c % p
        if t == 0:
            r_rel, pivr, _ = pivots_mod_p(A, p)
            basis_idx = sorted(pivr)
        elif rank_mod_p_fast(A, p) != r_rel:
            raise Unstable("straightening rank differs between primes")
    target = Dq - r_rel

    # upper bound: rank of the evaluation matrix on exact sample planes.
    # Any mod-p rank bounds the exact rank from below, and the exact
    # kernel contains every quadric through the Grassmannian, so the rank
    # can never exceed target; hitting it on every prime closes the
    # sandwich.  A short rank means too few samples.
    Ipair = np.array([i for i, j in pairs])
    Jpair = np.array([j for i, j in pairs])
    count = target + max(24, target // 40)
    rounds = 0
    while True:
        mats = _sample_planes(k, m, count, seed, check=False)
        ranks = []
        for p in primes:
            V = np.zeros((len(mats), D), dtype=np.int64)
            for s, mat in enumerate(mats):
                mv = _minors_mod(mat, p)
                if mv is not None:
                    V[s] = mv
            E = (V[:, Ipair] * V[:, Jpair]) % p
            ranks.append(rank_mod_p_fast(E, p))
        if all(r == target for r in ranks):
            break
        rounds += 1
        if rounds >= 3:
            raise Unstable(
                "evaluation rank %s stuck below %d (after %d samples)"
                % (ranks, target, count))
        count = count + (count + 1) // 2

    basis = tuple(rel[i] for i in basis_idx)
    return PluckerQuadricSpace(k=k, m=m, dimension=r_rel, basis=basis,
                               primes_used=primes,
                               samples_used=count, stabilized=True)


def _rref_mod(rows, p):
    """Gauss-Jordan of a small dense integer matrix mod p.

    Returns (R, pivots) with unit pivot columns, or None when the rank
    drops below the row count.
    """
    a = [[int(x) % p for x in row] for row in rows]
    nr = len(a)
    nc = len(a[0])
    piv = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = next((i for i in range(r, nr) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
    if r < nr:
        return None
    return a, piv


def _small_det_mod(a, p):
    s = len(a)
    if s == 0:
        return 1
    if s == 1:
        return a[0][0] % p
    if s == 2:
        return (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % p
    if s == 3:
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])) % p
    # general small Gaussian, only hit for m - k > 3
    a = [row[:] for row in a]
    det = 1
    for c in range(s):
        pr = next((i for i in range(c, s) if a[i][c] % p), None)
        if pr is None:
            return 0
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], p - 2, p)
        for i in range(c + 1, s):
            f = a[i][c] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return det % p


def _minors_mod(mat, p):
    """All maximal minors mod p, up to one global unit, or None when the
    matrix degenerates mod p."""
    k = len(mat)
    m = len(mat[0])
    red = _rref_mod(mat, p)
    if red is None:
        return None
    R, piv = red
    seq, _ = subsets(m, k)
    out = []
    for sigma in seq:
        sset = set(sigma)
        rows = list(range(k))
        cols = list(sigma)
        sign = 1
        for j, pc in enumerate(piv):
            if pc in sset:
                ri = rows.index(j)
                ci = cols.index(pc)
                if (ri + ci) % 2:
                    sign = -sign
                rows.pop(ri)
                cols.pop(ci)
        if rows:
            d = _small_det_mod([[R[i][c] for c in cols] for i in rows], p)
        else:
            d = 1
        out.append((sign * d) % p)
    return out


# ---------------------------------------------------------------------------
# sampled spans of apolar quadric systems

@dataclass(frozen=True)
class SpanReport:
    """Span of sampled Pluecker vectors: modular rank on each prime, with
    the maximal independent subset re-checked over Q."""

    sample_count: int
    projective_dimension: int
    stabilized: bool
    primes_used: tuple
    rank: int
    exact_confirmed: bool
    basis_indices: tuple
    basis_vectors: tuple = field(repr=False, compare=False)
    frame_labels: tuple = field(default=(), repr=False, compare=False)

    def as_dict(self, include_basis=False):
        out = {"sample_count": self.sample_count,
               "projective_dimension": self.projective_dimension,
               "stabilized": self.stabilized,
               "primes_used": list(self.primes_used),
               "rank": self.rank,
               "exact_confirmed": self.exact_confirmed,
               "basis_indices": list(self.basis_indices),
               "frame": list(self.frame_labels)}
        if include_basis:
            out["basis_vectors"] = [[str(c) for c in row]
                                    for row in self.basis_vectors]
        return out


def _default_sampler(q, seed):
    """Ruling-curve points first (when the quadric carries pinned rational
    rulings), then seeded polar simplices."""
    head = []
    try:
        for ruling in (1, 2):
            for ab in ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (1, -2),
                       (2, 3)):
                head.append(ruling_curve(q, ruling, ab))
    except UnsupportedQuadric:
        head = []

    def sample(i):
        if i < len(head):
            return head[i]
        return polar_simplex_sample(q, seed=seed + i - len(head)).ideal()

    return sample


def vps_span(q, sampler=None, samples=200, seed=0, primes=None, exact=False):
    """Projective dimension of the span of sampled apolar quadric systems.

    The sampler is a callable index -> PluckerVec, list of Forms, or graded
    ideal (degree-2 piece taken); the default mixes the two ruling curves
    with seeded polar simplices.  25% extra samples are always drawn: the
    span is `stabilized` when they leave the rank unchanged.  Ranks run mod
    two primes unless exact=True; either way a maximal independent subset
    is confirmed over Q.
    """
    q = as_quadric(q)
    frame = _Frame(fixed_quadric_basis(q))
    k = math.comb(q.n, 2)
    m = frame.size
    stream = sampler if sampler is not None else _default_sampler(q, seed)

    def vec_at(i):
        v = stream(i)
        if isinstance(v, PluckerVec):
            if (v.k, v.m) != (k, m):
                raise DomainError("sampler vector lives in Gr(%d, %d), "
                                  "expected Gr(%d, %d)" % (v.k, v.m, k, m))
            return v
        return plucker(v, frame)

    base = samples
    total = base + max(1, base // 4)
    vecs = [vec_at(i) for i in range(total)]
    rounds = 0
    while True:
        rows = [list(v.coords) for v in vecs]
        if exact:
            ints = [_int_row(row) for row in rows]
            r_all = linalg.rank([row[:] for row in ints])
            r_base = linalg.rank([row[:] for row in ints[:base]])
            pivr = _exact_pivot_rows(ints, r_all)
            used = ()
            agree = True
        else:
            r_all = r_base = None
            pivr = pivc = None
            used = []
            agree = True
            for p in (primes or PRIME_POOL):
                try:
                    a = reduce_matrix(rows, p)
                except BadReduction:
                    if primes:
                        raise
                    continue
                ra, pr, pc = pivots_mod_p(a, p)
                rb = rank_mod_p_fast(reduce_matrix(rows[:base], p), p)
                used.append(p)
                if r_all is None:
                    r_all, r_base, pivr, pivc = ra, rb, sorted(pr), pc
                elif (ra, rb) != (r_all, r_base):
                    agree = False
                if len(used) == 2:
                    break
            if r_all is None:
                raise BadReduction("no usable prime for the span rank")
        if agree and r_base == r_all:
            break
        rounds += 1
        if rounds >= 3:
            raise Unstable("span rank still moving after %d samples"
                           % len(vecs))
        grow = max(1, len(vecs) // 4)
        vecs.extend(vec_at(i) for i in range(len(vecs), len(vecs) + grow))
        base = len(vecs) - grow

    # exact confirmation: the pivot submatrix has nonzero determinant
    if not exact:
        sub = [[Fraction(rows[i][c]) for c in pivc] for i in pivr]
        if linalg.det(sub) == 0:
            raise Unstable("modular pivots degenerate over Q")
    basis_vectors = tuple(tuple(rows[i]) for i in pivr)
    return SpanReport(sample_count=len(vecs),
                      projective_dimension=r_all - 1,
                      stabilized=True,
                      primes_used=tuple(used),
                      rank=r_all,
                      exact_confirmed=True,
                      basis_indices=tuple(pivr),
                      basis_vectors=basis_vectors,
                      frame_labels=frame.labels())


def _exact_pivot_rows(ints, rank):
    """Greedy independent subset over Q (exact path only; small inputs)."""
    chosen = []
    for i, row in enumerate(ints):
        if linalg.rank([ints[j] for j in chosen] + [row]) > len(chosen):
            chosen.append(i)
            if len(chosen) == rank:
                break
    return chosen


# ---------------------------------------------------------------------------
# restriction of the quadric space to a span

def _quadric_rows(quadrics):
    if isinstance(quadrics, PluckerQuadricSpace):
        return list(quadrics.basis)
    out = []
    for row in quadrics:
        row = tuple(dict(row).items()) if not isinstance(row, tuple) else row
        out.append(tuple(row))
    return out


def _span_vectors(span):
    if isinstance(span, SpanReport):
        return [list(v) for v in span.basis_vectors]
    out = []
    for v in span:
        out.append(list(v.coords) if isinstance(v, PluckerVec) else list(v))
    return out


def _restricted_matrix_mod(rows, R, p, chunk=1024):
    """Stack of restricted quadrics mod p: each sparse quadric A maps to
    the upper triangle of R A R^T, R the span-basis matrix."""
    r = R.shape[0]
    nq = len(rows)
    tmax = max(len(row) for row in rows)
    I = np.zeros((nq, tmax), dtype=np.int64)
    J = np.zeros((nq, tmax), dtype=np.int64)
    C = np.zeros((nq, tmax), dtype=np.int64)
    for s, row in enumerate(rows):
        for t, ((i, j), c) in enumerate(row):
            I[s, t], J[s, t], C[s, t] = i, j, c % p
    B = np.zeros((nq, r, r), dtype=np.int64)
    for lo in range(0, tmax, chunk):
        hi = min(tmax, lo + chunk)
        X = (R[:, I[:, lo:hi]] * C[:, lo:hi]) % p
        Y = R[:, J[:, lo:hi]]
        B = (B + np.einsum("aqt,bqt->qab", X, Y)) % p
    B = (B + B.transpose(0, 2, 1)) % p
    iu = np.triu_indices(r)
    return B[:, iu[0], iu[1]]


def restrict_quadrics(quadrics, span, primes=None, exact=False):
    """Rank of the quadric space restricted to a linear span.

    quadrics: PluckerQuadricSpace or sparse rows; span: SpanReport (its
    exact independent subset is the basis) or a list of vectors.  The
    target is the space of quadrics on the span, of dimension
    C(rank + 1, 2); the result is certified on two primes, or computed
    over Q with exact=True.
    """
    rows = _quadric_rows(quadrics)
    vectors = _span_vectors(span)
    ints = [_int_row(v) for v in vectors]
    if exact:
        M = []
        for row in rows:
            B = [[Fraction(0)] * len(ints) for _ in ints]
            for (i, j), c in row:
                for a, ra in enumerate(ints):
                    for b, rb in enumerate(ints):
                        B[a][b] += c * (ra[i] * rb[j] + ra[j] * rb[i])
            M.append([B[a][b] for a in range(len(ints))
                      for b in range(a, len(ints))])
        return linalg.rank(M)
    primes = tuple(primes) if primes else MATMUL_PRIMES
    got = None
    for p in primes:
        R = np.array([[x % p for x in row] for row in ints], dtype=np.int64)
        M = _restricted_matrix_mod(rows, R, p)
        rk = rank_mod_p_fast(M, p)
        if got is None:
            got = rk
        elif rk != got:
            raise Unstable("restricted rank differs between primes")
    return got


# ---------------------------------------------------------------------------
# the two ruling curves

def _qval(A, u, v):
    return sum(A[i][j] * u[i] * v[j]
               for i in range(len(u)) for j in range(len(u)))


def ruling_curve(q, ruling, parameter):
    """Pluecker vector of (I_L ∩ q^perp)_2 for the ruling line L_[a:b].

    The inverse quadric of y1y4+y2y3 is 4x1x4+4x2x3, a smooth quadric
    surface; its two rulings are parameterized by
        ruling 1:  L spanned by (a, 0, b, 0), (0, a, 0, -b)
        ruling 2:  L spanned by (a, -b, 0, 0), (0, 0, a, b).
    At [1:0] the first ruling passes through the coordinate line V(x3, x4).
    Quadrics without that pinned split structure raise UnsupportedQuadric.
    """
    q = as_quadric(q)
    if q.n != 4 or q.form != standard_split_quadric(4, q.ring).form:
        raise UnsupportedQuadric(
            "rational rulings are pinned for the standard split quadric")
    if ruling not in (1, 2):
        raise DomainError("ruling must be 1 or 2")
    a, b = (Fraction(t) for t in parameter)
    if a == 0 and b == 0:
        raise DomainError("parameter (0, 0) is not a point of P^1")
    if ruling == 1:
        pts = [(a, 0, b, 0), (0, a, 0, -b)]
    else:
        pts = [(a, -b, 0, 0), (0, 0, a, b)]
    A = inverse_quadric(q).gram
    assert _qval(A, pts[0], pts[0]) == 0 and _qval(A, pts[1], pts[1]) == 0
    assert _qval(A, pts[0], pts[1]) == 0
    L = LinearSubspace(q.ring, 4, [list(p) for p in pts])
    lin = L.perp().basis()
    monos2 = monomials(4, 2)
    line_rows = [(Form.variable(lin[0].ring, 4, i) * g).vector(monos2)
                 for g in lin for i in range(4)]
    perp_rows = [f.vector(monos2) for f in fixed_quadric_basis(q)]
    inter = linalg.intersect_row_spaces(line_rows, perp_rows)
    assert len(inter) == 6
    ring = lin[0].ring
    forms = [Form.from_vector(ring, 4, 2, row, monos2) for row in inter]
    return plucker(forms, q)


# ---------------------------------------------------------------------------
# degree of a parameterized curve of Pluecker vectors

def fit_rnc_degree(samples, max_degree=12, holdout=2, seed=0):
    """Least d such that binary degree-d forms in the parameter interpolate
    every Pluecker coordinate projectively, checked on held-out samples.

    samples: >= 9 pairs (parameter (a, b), PluckerVec or coordinate
    vector), distinct parameters.  The last `holdout` samples never enter
    the fit; a candidate degree is accepted only when the fitted forms
    reproduce them up to scale.  Certifying degree d needs at least d + 2
    fitting samples (below that the fit is underdetermined), so pass at
    least d + 2 + holdout pairs for the largest degree of interest.
    Raises NotPolynomialMap when no degree <= max_degree is consistent.
    """
    if len(samples) < 9:
        raise DomainError("need at least 9 samples")
    params = []
    rows = []
    for ab, v in samples:
        a, b = (Fraction(t) for t in ab)
        if a == 0 and b == 0:
            raise DomainError("parameter (0, 0) is not a point of P^1")
        params.append((a, b))
        coords = v.coords if isinstance(v, PluckerVec) else v
        rows.append([Fraction(c) for c in coords])
    for i in range(len(params)):
        for j in range(i + 1, len(params)):
            if params[i][0] * params[j][1] == params[i][1] * params[j][0]:
                raise DomainError("parameters must be projectively distinct")

    # compress to coordinates in the exact row-space frame of all samples
    R, r, piv = linalg.rref([row[:] for row in rows])
    coords = [[row[c] for c in piv] for row in rows]
    fit = len(samples) - holdout
    rng = random.Random("rnc:%d" % seed)
    for d in range(0, min(max_degree, fit - 2) + 1):
        if _fit_degree_works(params, coords, r, d, fit, rng):
            return d
    raise NotPolynomialMap("no consistent degree <= %d with %d samples"
                           % (min(max_degree, fit - 2), len(samples)))


def _fit_degree_works(params, coords, r, d, fit, rng):
    ncoef = d + 1
    nun = r * ncoef + fit
    eqs = []
    for s in range(fit):
        a, b = params[s]
        pw = [a ** (d - e) * b ** e for e in range(ncoef)]
        for t in range(r):
            row = [Fraction(0)] * nun
            row[t * ncoef:(t + 1) * ncoef] = pw
            row[r * ncoef + s] = -coords[s][t]
            eqs.append(row)
    K = linalg.kernel_basis(eqs, nun)
    if not K:
        return False
    candidates = list(K)
    for _ in range(4):
        w = [rng.randint(-3, 3) for _ in K]
        candidates.append([sum(wi * v[i] for wi, v in zip(w, K))
                           for i in range(nun)])
    for cand in candidates:
        mu = cand[r * ncoef:]
        if any(x == 0 for x in mu):
            continue
        if _holdout_consistent(cand, params, coords, r, d, fit):
            return True
    return False


def _holdout_consistent(cand, params, coords, r, d, fit):
    ncoef = d + 1
    for h in range(fit, len(params)):
        a, b = params[h]
        w = [sum(cand[t * ncoef + e] * a ** (d - e) * b ** e
                 for e in range(ncoef)) for t in range(r)]
        if all(x == 0 for x in w):
            return False
        c = coords[h]
        for t in range(r):
            for u in range(t + 1, r):
                if w[t] * c[u] != w[u] * c[t]:
                    return False
    return True


# ---------------------------------------------------------------------------
# optional stretch probe: degreewise Hilbert values of the restricted ideal

def stretch_hilbert(quadrics, span, dmax=3, prime=None,
                    memory_budget=1_200_000_000):
    """Degreewise quotient dimensions for the ideal generated by the
    restricted quadrics, single-prime modular ranks.

    This is the desk-scale slice of the big Groebner verification: no
    runtime guarantee, and when degree d would exceed the memory budget
    only the rows that fit are eliminated, making the reported ideal rank
    a lower bound (flagged by rows_used < rows_total).
    Returns {d: {"quotient": int, "rows_used": int, "rows_total": int}}.
    """
    p = prime or MATMUL_PRIMES[0]
    rows = _quadric_rows(quadrics)
    ints = [_int_row(v) for v in _span_vectors(span)]
    r = len(ints)
    R = np.array([[x % p for x in row] for row in ints], dtype=np.int64)
    M = _restricted_matrix_mod(rows, R, p)
    iu = np.triu_indices(r)
    out = {0: {"quotient": 1, "rows_used": 0, "rows_total": 0},
           1: {"quotient": r, "rows_used": 0, "rows_total": 0}}
    # quadric forms as dense degree-2 coefficient dicts (off-diagonal
    # matrix entries carry the 1/2, so double them back into coefficients)
    forms = []
    for row in M:
        f = {}
        for t in range(len(iu[0])):
            a, b = int(iu[0][t]), int(iu[1][t])
            c = int(row[t])
            if c == 0:
                continue
            mono = [0] * r
            mono[a] += 1
            mono[b] += 1
            f[tuple(mono)] = c if a == b else 2 * c % p
        forms.append(f)
    for d in range(2, dmax + 1):
        target = monomials(r, d)
        index = {mo: t for t, mo in enumerate(target)}
        cols = len(target)
        mults = monomials(r, d - 2)
        total = len(forms) * len(mults)
        cap = max(1, memory_budget // (cols * 8))
        use = min(total, cap)
        A = np.zeros((use, cols), dtype=np.int64)
        s = 0
        for f in forms:
            if s == use:
                break
            for mu in mults:
                if s == use:
                    break
                for mo, c in f.items():
                    A[s, index[tuple(x + y for x, y in zip(mo, mu))]] = c
                s += 1
        rk = rank_mod_p_fast(A, p)
        out[d] = {"quotient": cols - rk, "rows_used": use,
                  "rows_total": total}
    return out
