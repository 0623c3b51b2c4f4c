"""Polar simplices and their degenerations.

Schemes live in P(T_1): a point has y-coordinates, its ideal lives in S.
A polar simplex for a full-rank quadric q in T_2 is a set of n points
whose squared linear forms span q exactly; the closure of the locus of
apolar length-n schemes also contains unsaturated ideals, and the
verdict machinery here (check_vps, detect_line, the sbl and polarity
conditions) classifies a given ideal the way the limit analysis does.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import grobner, linalg
from .apolarity import (LinearSubspace, Quadric, apolar_ideal, apply_diff,
                        as_quadric, inverse_quadric)
from .errors import (DegenerateParameters, DomainError, Infeasible,
                     SingularQuadric, UnsupportedQuadric)
from .ideals import GradedIdeal, HilbertFunction, hilbert_function
from .rings import Form, dual_ring, evaluate, monomials, parse_form


# ---------------------------------------------------------------------------
# points and their ideals

def _as_point(p, n):
    pt = tuple(Fraction(c) for c in p)
    if len(pt) != n:
        raise DomainError("point has %d coordinates, expected %d"
                          % (len(pt), n))
    if all(c == 0 for c in pt):
        raise DomainError("zero vector is not a projective point")
    return pt


def _proportional(p, q):
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            if p[i] * q[j] != p[j] * q[i]:
                return False
    return True


def _normalize_point(p):
    """Primitive integer representative with positive leading entry."""
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(Fraction(v) for v in ints)


def _eval_monomial(m, p):
    v = Fraction(1)
    for e, c in zip(m, p):
        if e:
            v *= c ** e
    return v


def points_ideal(spec, n=None, ring="S", dmax=None):
    """Saturated ideal of a finite set of distinct points.

    spec is either a list of points (y-coordinate tuples; the ideal then
    lives in the x-ring) or an already-saturated GradedIdeal passed
    through unchanged.  Repeated points are rejected; non-reduced schemes
    must come in as ideals.
    """
    if isinstance(spec, GradedIdeal):
        if not grobner.is_saturated(spec):
            raise DomainError("ideal is not saturated")
        return spec
    pts = list(spec)
    if not pts:
        raise DomainError("no points given")
    if n is None:
        n = len(pts[0])
    pts = [_as_point(p, n) for p in pts]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if _proportional(pts[i], pts[j]):
                raise DomainError("repeated point in position %d and %d"
                                  % (i, j))
    if dmax is None:
        dmax = max(len(pts), 2)
    pieces = {}
    for d in range(1, dmax + 1):
        monos = monomials(n, d)
        rows = [[_eval_monomial(m, p) for m in monos] for p in pts]
        kern = linalg.kernel_basis(rows, len(monos))
        pieces[d] = [Form.from_vector(ring, n, d, v, monos) for v in kern]
    ideal = GradedIdeal.from_pieces(ring, n, pieces)
    assert hilbert_function(ideal).eventual == len(pts)
    return ideal


def random_points(n, count, seed=0, spanning=False):
    """Deterministic pseudorandom distinct points, optionally spanning."""
    rng = random.Random(seed)
    for _ in range(200):
        pts = []
        while len(pts) < count:
            p = tuple(Fraction(rng.randrange(-9, 10)) for _ in range(n))
            if all(c == 0 for c in p):
                continue
            if any(_proportional(p, q) for q in pts):
                continue
            pts.append(p)
        if spanning and linalg.rank([list(p) for p in pts]) < min(n, count):
            continue
        return [_normalize_point(p) for p in pts]
    raise Infeasible("could not sample %d points in %d variables"
                     % (count, n))


# ---------------------------------------------------------------------------
# polar simplices

@dataclass
class PolarSimplex:
    """n points with weights whose squared linear forms sum to q."""

    points: list
    weights: list
    quadric: Quadric

    @property
    def n(self):
        return self.quadric.n

    def linear_forms(self):
        n = self.n
        return [Form(self.quadric.ring, n, 1,
                     {tuple(1 if k == i else 0 for k in range(n)): c
                      for i, c in enumerate(p) if c != 0})
                for p in self.points]

    def expansion(self):
        out = Form.zero(self.quadric.ring, self.n, 2)
        for w, l in zip(self.weights, self.linear_forms()):
            out = out + l * l * w
        return out

    def verify(self):
        return self.expansion() == self.quadric.form

    def ideal(self, dmax=None):
        return points_ideal(self.points, n=self.n,
                            ring=dual_ring(self.quadric.ring), dmax=dmax)


def standard_split_quadric(n, ring="T"):
    """The full-rank quadric used throughout for hyperbolic coordinates:
    y1y4+y2y3 for n=4, plus a half square of the middle variable for
    n=5."""
    if n == 4:
        return as_quadric(parse_form("y1*y4 + y2*y3", ring=ring, n=4))
    if n == 5:
        return as_quadric(parse_form("y1*y4 + y2*y3 + 1/2*y5^2",
                                     ring=ring, n=5))
    raise UnsupportedQuadric("no standard split form pinned for n=%d" % n)


_SPLIT4_BASE = (
    [(1, 0, 0, 1), (1, 0, 0, -1), (0, 1, 1, 0), (0, 1, -1, 0)],
    [Fraction(1, 4), Fraction(-1, 4), Fraction(1, 4), Fraction(-1, 4)],
)


def _builtin_base(q):
    n = q.n
    A = q.gram
    if all(A[i][j] == 0 for i in range(n) for j in range(n) if i != j):
        # diagonal: the coordinate simplex with the diagonal weights
        pts = [tuple(Fraction(1 if j == i else 0) for j in range(n))
               for i in range(n)]
        return pts, [A[i][i] for i in range(n)]
    if q.form == standard_split_quadric(4, q.ring).form:
        pts, ws = _SPLIT4_BASE
        return [_as_point(p, 4) for p in pts], list(ws)
    if n == 5 and q.form == standard_split_quadric(5, q.ring).form:
        pts, ws = _SPLIT4_BASE
        pts5 = [_as_point(tuple(p) + (0,), 5) for p in pts]
        pts5.append(_as_point((0, 0, 0, 0, 1), 5))
        return pts5, list(ws) + [Fraction(1, 2)]
    raise UnsupportedQuadric(
        "no rational polar simplex base known for this quadric; pass one")


def cayley_orthogonal(q, seed=0, retries=8):
    """Rational orthogonal transformation of q: g^T A g = A exactly.

    Cayley parameterization g = (1-B)(1+B)^{-1} with B = CA for a random
    skew C; retried with fresh randomness if 1+B is singular.
    """
    q = as_quadric(q)
    n = q.n
    A = q.gram
    if linalg.det(A) == 0:
        raise SingularQuadric("Cayley transform needs a full-rank quadric")
    rng = random.Random(seed)
    I = linalg.identity(n)
    for _ in range(retries):
        M = [[Fraction(rng.randrange(-3, 4)) for _ in range(n)]
             for _ in range(n)]
        C = [[M[i][j] - M[j][i] for j in range(n)] for i in range(n)]
        B = linalg.matmul(C, A)
        IpB = [[I[i][j] + B[i][j] for j in range(n)] for i in range(n)]
        try:
            inv = linalg.inverse(IpB)
        except ValueError:
            continue
        ImB = [[I[i][j] - B[i][j] for j in range(n)] for i in range(n)]
        g = linalg.matmul(ImB, inv)
        gT = linalg.transpose(g)
        assert linalg.matmul(gT, linalg.matmul(A, g)) == A
        return g
    raise Infeasible("no invertible Cayley transform after %d tries"
                     % retries)


def polar_simplex_sample(q, seed=0, base=None):
    """A polar simplex for q: n points, weights, exact certificate.

    With seed=None the rational base itself is returned; an integer seed
    moves it by a seeded orthogonal transformation of q (the points map
    by g^T, which preserves the expansion).  Base quadrics built in:
    diagonal forms and the standard split forms; anything else needs an
    explicit base=(points, weights).
    """
    q = as_quadric(q)
    if q.rank() != q.n:
        raise SingularQuadric("polar simplices need a full-rank quadric")
    if base is None:
        pts, ws = _builtin_base(q)
    else:
        pts, ws = base
        pts = [_as_point(p, q.n) for p in pts]
        ws = [Fraction(w) for w in ws]
    simplex = PolarSimplex(pts, ws, q)
    if not simplex.verify():
        raise DomainError("base is not a polar simplex for the quadric")
    if seed is None:
        return simplex
    g = cayley_orthogonal(q, seed=seed)
    gT = linalg.transpose(g)
    moved = [tuple(linalg.matvec(gT, list(p))) for p in pts]
    simplex = PolarSimplex(moved, ws, q)
    assert simplex.verify()
    return simplex


# ---------------------------------------------------------------------------
# lines, polarity conditions on ideals

def line_ideal(L):
    """Ideal in the dual ring of the line (2-dim subspace of T_1)."""
    return GradedIdeal(dual_ring(L.ring), L.n, L.perp().basis())


def _vanishes_on_line(g, p1, p2):
    """Does the form vanish identically on the line s*p1 + t*p2?"""
    images = [Form("S", 2, 1, {m: c for m, c in (((1, 0), a), ((0, 1), b))
                               if c != 0})
              for a, b in zip(p1, p2)]
    total = Form.zero("S", 2, g.degree)
    for m, c in g.terms.items():
        term = Form.constant("S", 2, c)
        for i, e in enumerate(m):
            if e and images[i].is_zero():
                term = Form.zero("S", 2, 0)
                break
            for _ in range(e):
                term = term * images[i]
        total = total + term
    return total.is_zero()


def detect_line(ideal, seed=0, tries=14):
    """The line inside V of the low-degree part of the ideal.

    The degree <= 2 piece of an unsaturated limit ideal cuts out a line
    plus possibly embedded or isolated points.  Random hyperplane slices
    of the saturated quadric hull give candidate points; a pair that
    spans a line on which the whole hull vanishes identically is the
    answer.  Points of T_1 span the line as a LinearSubspace of T.
    """
    n = ideal.n
    low = ideal.piece(1) + ideal.piece(2)
    if not low:
        raise DomainError("no low-degree part to cut a line from")
    hull = grobner.saturate(GradedIdeal(ideal.ring, n, low))
    if hull.dim_piece(0) > 0:
        raise DomainError("degree-2 locus is empty")
    rng = random.Random(seed)
    pts = []
    for _ in range(tries):
        if len(pts) >= 4:
            break
        coeffs = [rng.randrange(-9, 10) for _ in range(n)]
        if all(c == 0 for c in coeffs):
            continue
        h = Form(ideal.ring, n, 1,
                 {tuple(1 if k == i else 0 for k in range(n)): Fraction(c)
                  for i, c in enumerate(coeffs) if c != 0})
        sliced = grobner.saturate(hull + GradedIdeal(ideal.ring, n, [h]))
        if sliced.dim_piece(0) > 0:
            continue
        lin = sliced.piece(1)
        if len(lin) != n - 1:
            continue
        kern = linalg.kernel_basis([f.vector() for f in lin], n)
        if len(kern) != 1:
            continue
        p = _normalize_point([Fraction(c) for c in kern[0]])
        if not any(_proportional(p, old) for old in pts):
            pts.append(p)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if all(_vanishes_on_line(g, pts[i], pts[j])
                   for g in hull.generators):
                return LinearSubspace("T", n, [list(pts[i]), list(pts[j])])
    raise DomainError("no line found in the degree-2 locus")


def line_in_inverse_quadric(L, qinv):
    """Is the line (subspace of T_1) inside the inverse quadric?"""
    qinv = as_quadric(qinv)
    basis = L.basis()
    return all(apply_diff(qinv.form, basis[i] * basis[j]).is_zero()
               for i in range(len(basis)) for j in range(i, len(basis)))


def kri_check(L, N, qinv):
    """q^{-1}(L*N) = 0 for subspaces L, N of T_1."""
    qinv = as_quadric(qinv)
    return all(apply_diff(qinv.form, l * v).is_zero()
               for l in L.basis() for v in N.basis())


def polar_subspace(L, qinv):
    """All nu in T_1 with q^{-1}(l*nu) = 0 for every l in L."""
    qinv = as_quadric(qinv)
    n = L.n
    ys = [Form("T", n, 1, {tuple(1 if k == j else 0 for k in range(n)):
                           Fraction(1)}) for j in range(n)]
    rows = [[apply_diff(qinv.form, l * y).as_scalar() for y in ys]
            for l in L.basis()]
    kern = linalg.kernel_basis(rows, n)
    return LinearSubspace("T", n, kern)


def sbl_products_contained(ideal, sat, L):
    """Does I^sat * I_L land inside I (the product-membership necessity)?"""
    IL = line_ideal(L)
    return all(ideal.contains(f * g)
               for f in sat.generators for g in IL.generators)


# ---------------------------------------------------------------------------
# membership verdicts

@dataclass
class VpsVerdict:
    """Everything check_vps decides about one ideal against one quadric."""

    in_vps: bool
    saturated: bool
    hilbert: HilbertFunction
    sbl_necessary: bool | None = None
    kri: bool | None = None
    line: list | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self):
        def enc(x):
            if isinstance(x, bool) or x is None or isinstance(x, int):
                return x
            if isinstance(x, Fraction):
                return str(x)
            if isinstance(x, HilbertFunction):
                return {"values": list(x.values), "eventual": x.eventual}
            if isinstance(x, (list, tuple)):
                return [enc(v) for v in x]
            if isinstance(x, dict):
                return {k: enc(v) for k, v in x.items()}
            return str(x)

        return {
            "in_vps": self.in_vps,
            "saturated": self.saturated,
            "sbl_necessary": self.sbl_necessary,
            "kri": self.kri,
            "line": enc(self.line),
            "hilbert": enc(self.hilbert),
            "details": enc(self.details),
        }


def check_vps(ideal, q, seed=0):
    """Classify an ideal against the apolar locus of a full-rank quadric.

    in_vps: Hilbert function (1,n,n,...) through the determinacy bound
    and the degree-2 piece apolar to q.  For unsaturated ideals the line
    in V(I_2) is detected and the product-membership (sbl) and polarity
    (kri) necessities for being a limit of saturated ideals are
    evaluated; the saturation's Hilbert function and span go into
    details.
    """
    q = as_quadric(q)
    if q.ring != dual_ring(ideal.ring):
        raise DomainError("quadric must live in the dual ring")
    if q.rank() != q.n:
        raise SingularQuadric("check_vps needs a full-rank quadric")
    n = ideal.n
    hf = hilbert_function(ideal)
    D = ideal.determinacy_bound()
    spanning = (hf[0] == 1 and hf.eventual == n
                and all(hf[d] == n for d in range(1, D + 1)))
    apolar = (ideal.dim_piece(1) == 0
              and all(apply_diff(f, q.form).is_zero()
                      for f in ideal.piece(2)))
    in_vps = spanning and apolar
    saturated = grobner.is_saturated(ideal)
    verdict = VpsVerdict(in_vps, saturated, hf)
    verdict.details["apolar_degree_2"] = apolar
    if saturated:
        return verdict
    sat = grobner.saturate(ideal)
    sat_hf = hilbert_function(sat)
    verdict.details["sat_hilbert"] = sat_hf
    try:
        L = detect_line(ideal, seed=seed)
    except DomainError as e:
        verdict.details["line_error"] = str(e)
        return verdict
    N = LinearSubspace(ideal.ring, n,
                       [f.vector() for f in sat.piece(1)]).perp()
    qinv = inverse_quadric(q)
    verdict.line = [list(row) for row in L.rows]
    verdict.sbl_necessary = sbl_products_contained(ideal, sat, L)
    verdict.kri = kri_check(L, N, qinv)
    verdict.details["line_in_inverse_quadric"] = line_in_inverse_quadric(
        L, qinv)
    verdict.details["span_dim"] = N.dim
    return verdict


def build_unsat_limit(gamma, q, seed=0):
    """Unsaturated ideal I = I_Gamma intersect q^perp, with its verdict.

    gamma is the saturated ideal of a finite scheme (or a list of
    points).  The verdict carries a not_saturable flag: true when the
    detected line fails to lie in the inverse quadric or either limit
    necessity (sbl, kri) fails.
    """
    q = as_quadric(q)
    gamma = points_ideal(gamma)
    ideal = gamma.intersect(q.perp()).minimalized()
    verdict = check_vps(ideal, q, seed=seed)
    flags = [verdict.sbl_necessary, verdict.kri,
             verdict.details.get("line_in_inverse_quadric")]
    verdict.details["not_saturable"] = any(f is False for f in flags)
    return ideal, verdict


# ---------------------------------------------------------------------------
# the two unsaturated families (n = 5)

def _line_subspace(line, n):
    if isinstance(line, LinearSubspace):
        if line.dim != 2:
            raise DomainError("line must be 2-dimensional in T_1")
        return line
    p1, p2 = line
    return LinearSubspace("T", n, [list(_as_point(p1, n)),
                                   list(_as_point(p2, n))])


def _points_on_line(pts, L, n):
    out = []
    for p in pts:
        p = tuple(Fraction(c) for c in p)
        if len(p) == 2:
            a, b = p
            basis = L.rows
            p = tuple(a * Fraction(basis[0][i]) + b * Fraction(basis[1][i])
                      for i in range(n))
        p = _as_point(p, n)
        if not L.contains(Form("T", n, 1,
                               {tuple(1 if k == i else 0 for k in range(n)): c
                                for i, c in enumerate(p) if c != 0})):
            raise DegenerateParameters("point does not lie on the line")
        out.append(p)
    return out


def family_builder(kind, parameters, q):
    """The two families of unsaturated apolar ideals for n = 5.

    F1: V(I^sat) = (length-4 Gamma' in a line L) disjoint-union a point
    p off the line; I = I^sat intersect q^perp.
    F2: Gamma of length 5 on a line; I = I^sat intersect c^perp
    intersect q^perp for a cubic c with H_{S/I}(2) = 5.

    parameters is a dict: line (two points or a LinearSubspace of T),
    gamma (points on the line, coordinate pairs on the line, or a
    saturated ideal), point (F1), cubic (F2, a Form in T_3 or string).
    Degenerate positions raise DegenerateParameters.
    """
    q = as_quadric(q)
    n = q.n
    if n != 5:
        raise DomainError("families are defined for n = 5")
    if q.rank() != n:
        raise SingularQuadric("families need a full-rank quadric")
    kind = kind.upper()
    if kind not in ("F1", "F2"):
        raise DomainError("unknown family %r" % kind)
    L = _line_subspace(parameters["line"], n)
    gamma = parameters["gamma"]
    if kind == "F1":
        p = _as_point(parameters["point"], n)
        p_form = Form("T", n, 1,
                      {tuple(1 if k == i else 0 for k in range(n)): c
                       for i, c in enumerate(p) if c != 0})
        if L.contains(p_form):
            raise DegenerateParameters("the extra point lies on the line")
        if isinstance(gamma, GradedIdeal):
            gpart = points_ideal(gamma)
            if hilbert_function(gpart).eventual != 4:
                raise DegenerateParameters("gamma must have length 4")
            if not all(gpart.contains(g)
                       for g in line_ideal(L).generators):
                raise DegenerateParameters("gamma does not lie on the line")
            try:
                sat = gpart.intersect(points_ideal([p], n=n))
            except DomainError as e:
                raise DegenerateParameters(str(e))
        else:
            pts = _points_on_line(gamma, L, n)
            if len(pts) != 4:
                raise DegenerateParameters("need a length-4 scheme on the line")
            try:
                sat = points_ideal(pts + [p], n=n)
            except DomainError as e:
                raise DegenerateParameters(str(e))
        ideal = sat.intersect(q.perp()).minimalized()
    else:
        if isinstance(gamma, GradedIdeal):
            sat = points_ideal(gamma)
            if hilbert_function(sat).eventual != 5:
                raise DegenerateParameters("gamma must have length 5")
            if not all(sat.contains(g) for g in line_ideal(L).generators):
                raise DegenerateParameters("gamma does not lie on the line")
        else:
            pts = _points_on_line(gamma, L, n)
            if len(pts) != 5:
                raise DegenerateParameters("need a length-5 scheme on the line")
            try:
                sat = points_ideal(pts, n=n)
            except DomainError as e:
                raise DegenerateParameters(str(e))
        c = parameters["cubic"]
        if isinstance(c, str):
            c = parse_form(c, ring="T", n=n)
        if c.degree != 3 or c.ring != "T":
            raise DomainError("cubic must be a degree-3 form in T")
        ideal = sat.intersect(apolar_ideal(c)).intersect(q.perp())
        ideal = ideal.minimalized()
        if ideal.hilbert(2) != 5:
            raise DegenerateParameters(
                "H(2) = %d, the cubic is too special or too generic"
                % ideal.hilbert(2))
    hf = hilbert_function(ideal)
    D = ideal.determinacy_bound()
    if not (hf[0] == 1 and all(hf[d] == n for d in range(1, D + 1))):
        raise DegenerateParameters("family member has Hilbert function %s"
                                   % hf)
    return ideal


def unsaturated_limit_family(t, ring="S"):
    """A pencil of apolar length-5 ideals whose special fiber is not
    saturated; the generic fiber is a Gorenstein scheme concentrated in
    one point, the special one has socle dimension 2."""
    t = Fraction(t)
    texts = ["x4*x5", "x3*x5", "x1*x5", "x4^2", "x3*x4",
             "x1*x4 - x5^2", "x3^2", "x2*x3 - x5^2", "x1*x3", "x1^4"]
    gens = [parse_form(s, ring=ring, n=5) for s in texts]
    x1sq = parse_form("x1^2", ring=ring, n=5)
    x2x4 = parse_form("x2*x4", ring=ring, n=5)
    gens.append(x1sq * t + x2x4)
    return GradedIdeal(ring, 5, gens)


# ---------------------------------------------------------------------------
# local structure at a point of the support

def _dehomogenize(g, chart, point):
    """Affine dict-polynomial of g on the chart x_chart = 1, translated
    so the (normalized) point sits at the origin."""
    n = g.n
    rest = [i for i in range(n) if i != chart]
    out = {}
    for m, c in g.terms.items():
        # expand prod_i (z_i + p_i)^{e_i} over the affine variables
        partial = {tuple([0] * (n - 1)): c}
        for pos, i in enumerate(rest):
            e = m[i]
            if e == 0:
                continue
            pi = point[i]
            new = {}
            for k in range(e + 1):
                coeff = Fraction(math.comb(e, k)) * pi ** (e - k)
                if coeff == 0:
                    continue
                for mm, cc in partial.items():
                    key = list(mm)
                    key[pos] += k
                    key = tuple(key)
                    new[key] = new.get(key, Fraction(0)) + cc * coeff
            partial = new
        for mm, cc in partial.items():
            if cc != 0:
                out[mm] = out.get(mm, Fraction(0)) + cc
    return {m: c for m, c in out.items() if c != 0}


def _affine_monomials(nv, kmax):
    """All monomials of degree < kmax in nv variables, by degree."""
    out = []
    for d in range(kmax):
        out.extend(monomials(nv, d))
    return out


def _truncated_rows(affine, nv, K):
    monos = _affine_monomials(nv, K)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for f in affine:
        fmin = min(sum(m) for m in f)
        for e in range(K - fmin):
            for g in monomials(nv, e):
                row = [Fraction(0)] * len(monos)
                nonzero = False
                for m, c in f.items():
                    mm = tuple(a + b for a, b in zip(m, g))
                    if sum(mm) < K:
                        row[index[mm]] += c
                        nonzero = True
                if nonzero:
                    rows.append(row)
    return monos, rows


def local_ring_invariants(ideal, point):
    """(length, socle dimension) of the local ring at a support point.

    The scheme ideal is saturated first if needed; the point must lie in
    the support.  The local algebra is realized as the chart quotient
    truncated modulo powers of the maximal ideal, with the truncation
    order raised until the dimension stabilizes (then the truncation is
    the local ring itself and other support points have dropped out).
    """
    point = _as_point(point, ideal.n)
    J = ideal if grobner.is_saturated(ideal) else grobner.saturate(ideal)
    for g in J.generators:
        if evaluate(g, point) != 0:
            raise DomainError("point is not in the support of the scheme")
    chart = next(i for i, c in enumerate(point) if c != 0)
    point = tuple(c / point[chart] for c in point)
    nv = ideal.n - 1
    affine = [_dehomogenize(g, chart, point) for g in J.generators]
    affine = [f for f in affine if f]
    prev = None
    for K in range(2, 16):
        monos, rows = _truncated_rows(affine, nv, K)
        rank = linalg.rank(rows) if rows else 0
        dim = len(monos) - rank
        if prev is not None and dim == prev:
            return _socle_from_truncation(affine, nv, K, dim)
        prev = dim
    raise Infeasible("local ring dimension did not stabilize")


def _socle_from_truncation(affine, nv, K, length):
    monos, rows = _truncated_rows(affine, nv, K)
    index = {m: i for i, m in enumerate(monos)}
    R, rank, piv = linalg.rref(rows) if rows else ([], 0, [])
    R = R[:rank]
    std = [j for j in range(len(monos)) if j not in piv]
    assert len(std) == length
    # socle = common kernel of multiplication by every variable; an
    # element is a coordinate vector on the standard monomials, and
    # z_j * m reduces against the relations (degree-K products are zero
    # because the truncation has stabilized)
    mat = []
    for j in range(nv):
        block = []
        for col in std:
            mm = list(monos[col])
            mm[j] += 1
            mm = tuple(mm)
            v = [Fraction(0)] * len(monos)
            if sum(mm) < K:
                v[index[mm]] = Fraction(1)
                v = linalg.reduce_vector(R, piv, v)
            block.append([v[s] for s in std])
        for t in range(len(std)):
            mat.append([block[s][t] for s in range(len(std))])
    kern = linalg.kernel_basis(mat, len(std)) if mat else []
    return length, len(kern)


def is_locally_gorenstein(ideal, point):
    """Is the local ring of the scheme at the point Gorenstein
    (one-dimensional socle)?"""
    return local_ring_invariants(ideal, point)[1] == 1


def socle_dimension(ideal, point):
    return local_ring_invariants(ideal, point)[1]


# ---------------------------------------------------------------------------
# Macaulay growth

def macaulay_bound(h, d):
    """Maximal value of H(d+1) given H(d) = h, by Macaulay's growth
    theorem: write h as the d-th Macaulay expansion and push every
    binomial up by one."""
    if d < 1:
        raise DomainError("Macaulay bound needs d >= 1")
    if h < 0:
        raise DomainError("negative Hilbert value")
    if h == 0:
        return 0
    rem = h
    i = d
    bound = 0
    while rem > 0:
        if i == 0:
            raise AssertionError("Macaulay expansion failed")
        a = i
        while math.comb(a + 1, i) <= rem:
            a += 1
        rem -= math.comb(a, i)
        bound += math.comb(a + 1, i + 1)
        i -= 1
    return bound


def hf_growth_ok(values):
    """Does the sequence satisfy the Macaulay growth bound at every
    step (from degree 1 on)?"""
    vals = list(values)
    return all(vals[d + 1] <= macaulay_bound(vals[d], d)
               for d in range(1, len(vals) - 1))
