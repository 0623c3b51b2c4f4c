"""Differentiation pairing between the dual rings, apolar ideals,
quadrics and their inverses, and the polarity conditions.

Convention: x^a acts on y^b as the operator ∂^a with no factorial
rescaling, so apply_diff(x1x4 + x2x3, y1y4 + y2y3) = 2.  A quadric form
and its symmetric matrix are related by A_ii = c_ii and A_ij = c_ij / 2.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import linalg
from .errors import DomainError, Infeasible, NotLinearlyNormal, SingularQuadric
from .ideals import GradedIdeal
from .rings import Form, dual_ring, monomials, partial


def apply_diff(f, g):
    """Apply f (in one ring) to g (in the dual ring) by differentiation.

    Bilinear; returns a form of degree deg(g) - deg(f) in g's ring.
    """
    if f.ring == g.ring:
        raise DomainError("apply_diff expects forms in dual rings")
    if f.n != g.n:
        raise DomainError("apply_diff expects forms in the same dimension")
    if f.degree > g.degree:
        raise DomainError("cannot differentiate degree %d by degree %d"
                          % (g.degree, f.degree))
    out = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            coeff = ca * cb
            rest = []
            for ai, bi in zip(a, b):
                if ai > bi:
                    coeff = 0
                    break
                for t in range(ai):
                    coeff *= bi - t
                rest.append(bi - ai)
            if coeff:
                m = tuple(rest)
                out[m] = out.get(m, Fraction(0)) + coeff
    return Form(g.ring, g.n, g.degree - f.degree, out)


def pairing(f, g):
    """Scalar value of the pairing for equal-degree dual forms."""
    return apply_diff(f, g).as_scalar()


def apolar_ideal(g, dmax=None):
    """The annihilator of g under differentiation, as a graded ideal in
    the dual ring.

    Piece e (for e <= deg g) is the kernel of pairing against g; every
    piece above deg g is full, so generators live in degrees <= deg g + 1.
    """
    if g.is_zero():
        raise DomainError("apolar ideal of the zero form")
    d = g.degree
    ring = dual_ring(g.ring)
    n = g.n
    pieces = {}
    for e in range(1, d + 1):
        monos = monomials(n, e)
        rows = [apply_diff(Form.monomial(ring, n, m), g).vector()
                for m in monos]
        kern = linalg.kernel_basis(linalg.transpose(rows), len(monos))
        pieces[e] = [Form.from_vector(ring, n, e, v, monos) for v in kern]
    pieces[d + 1] = [Form.monomial(ring, n, m) for m in monomials(n, d + 1)]
    ideal = GradedIdeal.from_pieces(ring, n, pieces)
    if dmax is not None:
        for e in range(dmax + 1):
            ideal.dim_piece(e)
    return ideal


# ---------------------------------------------------------------------------
# quadrics

class Quadric:
    """A quadratic form together with its symmetric matrix."""

    def __init__(self, form):
        if form.degree != 2:
            raise DomainError("quadric must have degree 2")
        self.form = form
        self.ring = form.ring
        self.n = form.n
        self._gram = None

    @classmethod
    def from_matrix(cls, ring, n, A):
        terms = {}
        for i in range(n):
            for j in range(i, n):
                c = Fraction(A[i][j])
                if i != j:
                    if A[j][i] != A[i][j]:
                        raise DomainError("matrix of a quadric must be symmetric")
                    c = 2 * c
                if c:
                    m = [0] * n
                    m[i] += 1
                    m[j] += 1
                    terms[tuple(m)] = c
        return cls(Form(ring, n, 2, terms))

    @property
    def gram(self):
        if self._gram is None:
            A = [[Fraction(0)] * self.n for _ in range(self.n)]
            for m, c in self.form.terms.items():
                idx = [i for i, e in enumerate(m) for _ in range(e)]
                i, j = idx
                if i == j:
                    A[i][i] = c
                else:
                    A[i][j] = A[j][i] = c / 2
            self._gram = A
        return self._gram

    def rank(self):
        return linalg.rank(self.gram)

    def is_full_rank(self):
        return self.rank() == self.n

    def apply(self, v):
        """The collineation S_1 -> T_1 (or back) induced by this quadric."""
        return apply_diff(v, self.form)

    def perp(self):
        """The apolar ideal of the underlying form."""
        return apolar_ideal(self.form)

    def __eq__(self, other):
        if isinstance(other, Quadric):
            return self.form == other.form
        return NotImplemented

    def __hash__(self):
        return hash(self.form)

    def __repr__(self):
        return "Quadric(%s)" % self.form


def as_quadric(q):
    if isinstance(q, Quadric):
        return q
    return Quadric(q)


def inverse_quadric(q):
    """Quadric in the dual ring whose matrix is the inverse matrix."""
    q = as_quadric(q)
    try:
        B = linalg.inverse(q.gram)
    except ValueError:
        raise SingularQuadric("quadric of rank %d < %d" % (q.rank(), q.n))
    return Quadric.from_matrix(dual_ring(q.ring), q.n, B)


# ---------------------------------------------------------------------------
# linear subspaces of a degree-1 piece

class LinearSubspace:
    """Subspace of the degree-1 piece of S or T, kept as a canonical
    rref coefficient basis."""

    def __init__(self, ring, n, forms_or_rows):
        self.ring = ring
        self.n = n
        rows = []
        for f in forms_or_rows:
            if isinstance(f, Form):
                if f.ring != ring or f.n != n or (not f.is_zero() and f.degree != 1):
                    raise DomainError("not a degree-1 form of the right ring")
                rows.append(f.vector())
            else:
                rows.append([Fraction(c) for c in f])
        self.rows = linalg.row_basis(rows)

    @property
    def dim(self):
        return len(self.rows)

    def basis(self):
        monos = monomials(self.n, 1)
        return [Form.from_vector(self.ring, self.n, 1, r, monos)
                for r in self.rows]

    def perp(self):
        """Annihilator in the dual degree-1 piece (x_i dual to y_i)."""
        kern = linalg.kernel_basis(self.rows, self.n)
        return LinearSubspace(dual_ring(self.ring), self.n, kern)

    def contains(self, f):
        v = f.vector() if isinstance(f, Form) else list(f)
        R, rk, piv = linalg.rref(self.rows)
        return linalg.in_row_space(R[:rk], piv, v)

    def __eq__(self, other):
        if isinstance(other, LinearSubspace):
            return (self.ring == other.ring and self.n == other.n
                    and self.rows == other.rows)
        return NotImplemented

    def __repr__(self):
        return "LinearSubspace(%s, n=%d, dim %d)" % (self.ring, self.n, self.dim)


def as_subspace(ring, n, obj):
    if isinstance(obj, LinearSubspace):
        return obj
    return LinearSubspace(ring, n, obj)


def span_of_forms(forms):
    """LinearSubspace spanned by degree-1 forms."""
    forms = list(forms)
    if not forms:
        raise DomainError("empty span")
    return LinearSubspace(forms[0].ring, forms[0].n, forms)


# ---------------------------------------------------------------------------
# the six polarity conditions

class PolarityReport:
    """Results of the six polarity conditions, each computed on its own."""

    KEYS = (
        "products_in_q_perp",        # (1) L^⊥ · N^⊥ ⊆ q^⊥
        "q_kills_products",          # (2) q(L^⊥ · N^⊥) = 0
        "q_maps_Lperp_to_N",         # (3) q(L^⊥) = N
        "qinv_maps_N_to_Lperp",      # (4) q^{-1}(N) = L^⊥
        "qinv_kills_NL",             # (5) q^{-1}(N·L) = 0
        "NL_in_qinv_perp",           # (6) N·L ⊆ (q^{-1})^⊥
    )

    def __init__(self, values):
        self.values = tuple(bool(v) for v in values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def all_hold(self):
        return all(self.values)

    def agree(self):
        return len(set(self.values)) == 1

    def as_dict(self):
        return dict(zip(self.KEYS, self.values))

    def __repr__(self):
        return "PolarityReport(%s)" % (self.as_dict(),)


def polarity_conditions(L, N, q):
    """Evaluate the six equivalent polarity conditions for subspaces
    L, N of the degree-1 piece of the quadric's ring.

    Precondition dim L + dim N = n; the six booleans agree on every such
    input (that equivalence is a theorem, exercised by the tests, notassumed here).
    """
    q = as_quadric(q)
    ring, n = q.ring, q.n
    L = as_subspace(ring, n, L)
    N = as_subspace(ring, n, N)
    if L.dim + N.dim != n:
        raise DomainError("dim L + dim N = %d + %d != n = %d"
                          % (L.dim, N.dim, n))
    qinv = inverse_quadric(q)
    Lp = L.perp()
    Np = N.perp()
    q_perp = apolar_ideal(q.form)
    qinv_perp = apolar_ideal(qinv.form)

    prods_S = [u * v for u in Lp.basis() for v in Np.basis()]
    c1 = all(q_perp.contains(p) for p in prods_S)
    c2 = all(apply_diff(p, q.form).as_scalar() == 0 for p in prods_S)

    image = [apply_diff(u, q.form) for u in Lp.basis()]
    c3 = LinearSubspace(ring, n, image) == N

    image_inv = [apply_diff(w, qinv.form) for w in N.basis()]
    c4 = LinearSubspace(dual_ring(ring), n, image_inv) == Lp

    prods_T = [w * l for w in N.basis() for l in L.basis()]
    c5 = all(apply_diff(t, qinv.form).as_scalar() == 0 for t in prods_T)
    c6 = all(qinv_perp.contains(t) for t in prods_T)

    return PolarityReport((c1, c2, c3, c4, c5, c6))


# ---------------------------------------------------------------------------
# quadrics apolar to a scheme

class QuadricSearch:
    """Solution space of quadrics annihilated by I_2, with witness data."""

    def __init__(self, basis, witness, full_rank_exists, certificate, tries):
        self.basis = basis
        self.dimension = len(basis)
        self.witness = witness
        self.full_rank_exists = full_rank_exists
        self.certificate = certificate
        self.tries = tries

    def __repr__(self):
        return ("QuadricSearch(dim %d, witness=%s, certificate=%s)"
                % (self.dimension, self.witness is not None, self.certificate))


def _symbolic_det_vanishes(quadrics):
    """Exact check that det(sum t_k A_k) is the zero polynomial.

    The determinant is expanded as a homogeneous form in the t's (the
    auxiliary ring reuses Form with k variables).
    """
    k = len(quadrics)
    n = quadrics[0].n
    grams = [q.gram for q in quadrics]
    entries = [[Form("S", k, 1,
                     {tuple(int(t == s) for t in range(k)): grams[s][i][j]
                      for s in range(k)})
                for j in range(n)] for i in range(n)]
    total = Form.zero("S", k, n)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n)
                  if perm[a] > perm[b])
        prod = Form.constant("S", k, -1 if inv % 2 else 1)
        for i in range(n):
            prod = prod * entries[i][perm[i]]
            if prod.is_zero():
                break
        if not prod.is_zero():
            total = total + prod
    return total.is_zero()


def apolar_quadrics(ideal, seed=0, tries=64, require_spanning=True):
    """All quadrics in the dual ring annihilated by the degree-2 piece,
    plus a seeded search for a full-rank element.

    Requires the scheme to span (H(1) = n) unless require_spanning is
    False; a full-rank witness exists exactly when the scheme is locally
    Gorenstein.  A degenerate scheme never admits one (its quadrics only
    involve the variables it spans), but the search itself still makes
    sense and require_spanning=False runs it.  When the random sweep
    finds nothing and the space is small (dim <= 4, n <= 5), absence is
    certified by the identically-vanishing symbolic determinant.
    """
    n = ideal.n
    if require_spanning and ideal.hilbert(1) != n:
        raise NotLinearlyNormal("scheme spans only %d of %d dimensions"
                                % (ideal.hilbert(1), n))
    ring = dual_ring(ideal.ring)
    monos2 = monomials(n, 2)
    # pairing of x^a with y^a is a! (2 for squares, 1 for mixed terms)
    weights = [Fraction(2) if max(m) == 2 else Fraction(1) for m in monos2]
    rows = []
    for f in ideal.piece(2):
        v = f.vector(monos2)
        rows.append([c * w for c, w in zip(v, weights)])
    kern = linalg.kernel_basis(rows, len(monos2))
    basis = [Quadric(Form.from_vector(ring, n, 2, v, monos2)) for v in kern]
    if not basis:
        return QuadricSearch([], None, False, "empty-space", 0)

    rng = random.Random(seed)
    used = 0
    for lo, hi, rounds in ((-9, 9, tries), (-99, 99, tries)):
        for _ in range(rounds):
            used += 1
            coeffs = [rng.randint(lo, hi) for _ in basis]
            cand = Form.zero(ring, n, 2)
            for c, b in zip(coeffs, basis):
                if c:
                    cand = cand + c * b.form
            if cand.is_zero():
                continue
            Q = Quadric(cand)
            if Q.is_full_rank():
                return QuadricSearch(basis, Q, True, "random-search", used)
        # basis elements themselves, before widening the range
        for b in basis:
            if b.is_full_rank():
                return QuadricSearch(basis, b, True, "basis-element", used)

    if len(basis) <= 4 and n <= 5:
        if _symbolic_det_vanishes(basis):
            return QuadricSearch(basis, None, False,
                                 "determinant-vanishes", used)
        # the determinant is not identically zero, so a witness exists;
        # hunt on a widening grid until it shows up
        bound = 3
        while True:
            bound *= 2
            for _ in range(256):
                used += 1
                coeffs = [rng.randint(-bound, bound) for _ in basis]
                cand = Form.zero(ring, n, 2)
                for c, b in zip(coeffs, basis):
                    if c:
                        cand = cand + c * b.form
                if not cand.is_zero() and Quadric(cand).is_full_rank():
                    return QuadricSearch(basis, Quadric(cand), True,
                                         "random-search", used)
    return QuadricSearch(basis, None, None, "random-search-exhausted", used)


# ---------------------------------------------------------------------------
# first-order orthogonalization

def derivation_apply(F, v):
    """Apply the derivation x_i -> sum_j F[i][j] x_j to the form v."""
    out = Form.zero(v.ring, v.n, v.degree)
    for i in range(v.n):
        dv = partial(v, i)
        if dv.is_zero():
            continue
        for j in range(v.n):
            if F[i][j]:
                out = out + F[i][j] * (Form.variable(v.ring, v.n, j) * dv)
    return out


def orthogonalize_first_order(I0, q, deformation):
    """Matrix F with (Id + eps F) moving a first-order deformation of I0
    back inside q^⊥, to first order.

    deformation maps each canonical basis form of (I0)_2 to a lift of its
    image in S_2/(I0)_2 (dict keyed by those forms, aligned list, or
    callable).  Raises Infeasible when no F works.
    """
    q = as_quadric(q)
    n = I0.n
    basis2 = I0.piece(2)
    if isinstance(deformation, dict):
        lifts = [deformation[v] for v in basis2]
    elif callable(deformation):
        lifts = [deformation(v) for v in basis2]
    else:
        lifts = list(deformation)
        if len(lifts) != len(basis2):
            raise DomainError("deformation list does not match dim (I0)_2")

    rows = []
    rhs = []
    xs = [Form.variable(I0.ring, n, j) for j in range(n)]
    for v, u in zip(basis2, lifts):
        if not q.perp().contains(v):
            raise DomainError("(I0)_2 is not contained in q^⊥")
        row = []
        for i in range(n):
            dv = partial(v, i)
            for j in range(n):
                row.append(pairing(xs[j] * dv, q.form) if not dv.is_zero()
                           else Fraction(0))
        rows.append(row)
        rhs.append(-pairing(u, q.form))
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise Infeasible("no first-order orthogonalization exists")
    return [[sol[i * n + j] for j in range(n)] for i in range(n)]
