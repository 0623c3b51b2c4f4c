"""Buchberger's algorithm, normal forms, saturation and syzygies.

Everything here is for homogeneous input (the Form type enforces it), so
the sugar of a pair is just the degree of the lcm and the classical
normal selection strategy is degree-by-degree.

Functions in this module work on plain lists of Forms; the GradedIdeal
wrappers live in ideals.py, which imports this module (saturate and
is_saturated below take ideals and import lazily to avoid the cycle).
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import linalg, modp
from .errors import BadReduction
from .rings import (Form, grevlex_key, grevlex_last_key, mono_div,
                    mono_divides, mono_lcm, mono_mul, monomials)


def normal_form(f, basis, key=grevlex_key):
    """Remainder of f on division by the (not necessarily Groebner) basis."""
    if f.is_zero():
        return f
    lead = [(g.leading_monomial(key), g.leading_coeff(key), g)
            for g in basis if not g.is_zero()]
    work = dict(f.terms)
    rem = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        if c == 0:
            continue
        hit = None
        for lm, lc, g in lead:
            if mono_divides(lm, m):
                hit = (lm, lc, g)
                break
        if hit is None:
            rem[m] = c
            continue
        lm, lc, g = hit
        q = mono_div(m, lm)
        factor = c / lc
        for mg, cg in g.terms.items():
            if mg == lm:
                continue
            mm = mono_mul(q, mg)
            nc = work.get(mm, Fraction(0)) - factor * cg
            if nc == 0:
                work.pop(mm, None)
            else:
                work[mm] = nc
    return Form(f.ring, f.n, f.degree, rem)


def normal_form_quotients(f, basis, key=grevlex_key):
    """(remainder, quotients) of division: f = sum q_i b_i + remainder."""
    quotients = [dict() for _ in basis]
    if f.is_zero():
        return f, [Form.zero(f.ring, f.n, 0) for _ in basis]
    lead = [(i, g.leading_monomial(key), g.leading_coeff(key), g)
            for i, g in enumerate(basis) if not g.is_zero()]
    work = dict(f.terms)
    rem = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        if c == 0:
            continue
        hit = None
        for i, lm, lc, g in lead:
            if mono_divides(lm, m):
                hit = (i, lm, lc, g)
                break
        if hit is None:
            rem[m] = c
            continue
        i, lm, lc, g = hit
        q = mono_div(m, lm)
        factor = c / lc
        quotients[i][q] = quotients[i].get(q, Fraction(0)) + factor
        for mg, cg in g.terms.items():
            if mg == lm:
                continue
            mm = mono_mul(q, mg)
            nc = work.get(mm, Fraction(0)) - factor * cg
            if nc == 0:
                work.pop(mm, None)
            else:
                work[mm] = nc
    qforms = []
    for g, qd in zip(basis, quotients):
        qd = {m: c for m, c in qd.items() if c != 0}
        deg = f.degree - g.degree
        qforms.append(Form(f.ring, f.n, max(deg, 0), qd))
    return Form(f.ring, f.n, f.degree, rem), qforms


def syzygy_generators(G, key=grevlex_key):
    """Generating set of the syzygy module of a Groebner basis.

    For each pair the s-polynomial reduces to zero; tracking the
    division quotients turns that reduction into an explicit relation
    m_i e_i - m_j e_j - sum q_k e_k, and these relations generate all
    syzygies of G (Schreyer).  Returned as tuples of Forms.
    """
    G = [g for g in G if not g.is_zero()]
    ring, n = (G[0].ring, G[0].n) if G else ("S", 0)
    out = []
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            li = G[i].leading_monomial(key)
            lj = G[j].leading_monomial(key)
            lcm = mono_lcm(li, lj)
            a = Form.monomial(ring, n, mono_div(lcm, li),
                              1 / G[i].leading_coeff(key))
            b = Form.monomial(ring, n, mono_div(lcm, lj),
                              1 / G[j].leading_coeff(key))
            s = a * G[i] - b * G[j]
            rem, qs = normal_form_quotients(s, G, key)
            if not rem.is_zero():
                raise BadReduction("input is not a Groebner basis")
            syz = [-q for q in qs]
            syz[i] = syz[i] + a
            syz[j] = syz[j] - b
            out.append(tuple(syz))
    return out


def s_poly(f, g, key=grevlex_key):
    lf, lg = f.leading_monomial(key), g.leading_monomial(key)
    lcm = mono_lcm(lf, lg)
    a = Form.monomial(f.ring, f.n, mono_div(lcm, lf),
                      1 / f.leading_coeff(key))
    b = Form.monomial(g.ring, g.n, mono_div(lcm, lg),
                      1 / g.leading_coeff(key))
    return a * f - b * g


def buchberger(generators, key=grevlex_key):
    """Reduced Groebner basis (monic, mutually reduced, sorted by leading
    monomial).  Pair selection by sugar degree; coprime-lead and chain
    criteria prune pairs."""
    G = []
    for g in generators:
        if not g.is_zero():
            G.append(g.monic(key))
    if not G:
        return []

    def lm(i):
        return G[i].leading_monomial(key)

    pairs = set()
    for i in range(len(G)):
        for j in range(i):
            pairs.add((j, i))

    def sugar(p):
        i, j = p
        return sum(mono_lcm(lm(i), lm(j)))

    while pairs:
        p = min(pairs,
                key=lambda p: (sugar(p), key(mono_lcm(lm(p[0]), lm(p[1]))), p))
        pairs.discard(p)
        i, j = p
        lcm = mono_lcm(lm(i), lm(j))
        # coprime leads: s-polynomial reduces to zero
        if lcm == mono_mul(lm(i), lm(j)):
            continue
        # chain criterion: a third element dividing the lcm whose pairs
        # with i and j are both already handled
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if not mono_divides(lm(k), lcm):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik not in pairs and pjk not in pairs:
                skip = True
                break
        if skip:
            continue
        r = normal_form(s_poly(G[i], G[j], key), G, key)
        if r.is_zero():
            continue
        r = r.monic(key)
        G.append(r)
        new = len(G) - 1
        for t in range(new):
            pairs.add((t, new))

    return reduce_basis(G, key)


def reduce_basis(G, key=grevlex_key):
    """Minimal reduced basis from any Groebner basis."""
    G = [g for g in G if not g.is_zero()]
    # minimalize: drop elements whose lead is divisible by another lead
    keep = []
    for i, g in enumerate(G):
        lg = g.leading_monomial(key)
        redundant = False
        for j, h in enumerate(G):
            if i == j:
                continue
            lh = h.leading_monomial(key)
            if mono_divides(lh, lg) and (lh != lg or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    # tail-reduce each against the others
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        out.append(normal_form(g, others, key).monic(key))
    out.sort(key=lambda g: (g.degree, key(g.leading_monomial(key))))
    return out


def groebner(ideal, key=grevlex_key):
    return buchberger(ideal.generators, key)


# ---------------------------------------------------------------------------
# dimension counting from lead monomials

def standard_monomials(leads, n, d, key=grevlex_key):
    """Degree-d monomials divisible by none of the lead monomials."""
    leads = [lm for lm in leads if sum(lm) <= d]
    out = []
    for m in monomials(n, d, key):
        for lm in leads:
            if mono_divides(lm, m):
                break
        else:
            out.append(m)
    return out


def piece_dimension_from_leads(leads, n, d, total=None):
    """dim of the degree-d piece of the ideal with the given GB leads."""
    if total is None:
        total = len(monomials(n, d))
    return total - len(standard_monomials(leads, n, d))


# ---------------------------------------------------------------------------
# colon and saturation primitives (generator-list level)

def _divide_out_variable(g, i):
    k = min(m[i] for m in g.terms)
    if k == 0:
        return g
    terms = {}
    for m, c in g.terms.items():
        mm = list(m)
        mm[i] -= k
        terms[tuple(mm)] = c
    return Form(g.ring, g.n, g.degree - k, terms)


def saturate_variable_gens(gens, i):
    """Generators of I : x_i^infinity for I = (gens).

    Reduced Groebner basis for grevlex with variable i last, divided by
    the top power of that variable (the classical revlex trick).
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    key = grevlex_last_key(i, gens[0].n)
    G = buchberger(gens, key)
    # the divided set is again a Groebner basis for the same order, so
    # reducing against that order is safe
    return reduce_basis([_divide_out_variable(g, i) for g in G], key)


def substitute(f, M):
    """f(Mx): replace x_i by the linear form sum_j M[i][j] x_j."""
    ring, n = f.ring, f.n
    images = [Form(ring, n, 1,
                   {tuple(1 if k == j else 0 for k in range(n)): Fraction(c)
                    for j, c in enumerate(M[i]) if c != 0})
              for i in range(n)]
    out = Form.zero(ring, n, f.degree)
    for m, c in f.terms.items():
        term = Form.constant(ring, n, c)
        for i, e in enumerate(m):
            for _ in range(e):
                term = term * images[i]
        out = out + term
    return out


def _map_linear_to_last(coeffs):
    """Invertible M with l(Mx) = x_n for l = sum coeffs[i] x_i, plus M^-1.

    Columns other than the last are chosen in the kernel of l, the last
    column pairs to 1, so substituting by M carries l to the last
    variable exactly.
    """
    a = [Fraction(c) for c in coeffs]
    n = len(a)
    t = next(i for i in range(n) if a[i] != 0)
    others = [i for i in range(n) if i != t]
    M = [[Fraction(0)] * n for _ in range(n)]
    for k, o in enumerate(others):
        M[o][k] = Fraction(1)
        M[t][k] = -a[o] / a[t]
    M[t][n - 1] = 1 / a[t]
    for j in range(n):
        want = Fraction(1 if j == n - 1 else 0)
        assert sum(a[i] * M[i][j] for i in range(n)) == want
    return M, linalg.inverse(M)


def saturate_linear_gens(gens, coeffs):
    """Generators of I : l^infinity for the linear form l = sum c_i x_i.

    The returned list generates the colon ideal but is not a Groebner
    basis in the original coordinates; minimalize on the ideal side if a
    small generating set is wanted.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    n = gens[0].n
    if len(coeffs) != n or all(c == 0 for c in coeffs):
        raise ValueError("need a nonzero linear form in %d variables" % n)
    if sum(1 for c in coeffs if c != 0) == 1:
        i = next(i for i, c in enumerate(coeffs) if c != 0)
        return saturate_variable_gens(gens, i)
    M, Minv = _map_linear_to_last(coeffs)
    moved = [substitute(g, M) for g in gens]
    sat = saturate_variable_gens(moved, n - 1)
    return [substitute(g, Minv) for g in sat]


def _linear_candidates(n, tries):
    """Deterministic stream of linear forms to saturate against."""
    yield [1] * n
    for i in range(n - 1, -1, -1):
        coeffs = [0] * n
        coeffs[i] = 1
        yield coeffs
    yield [(-1) ** i for i in range(n)]
    yield list(range(1, n + 1))
    rng = random.Random(11)
    for _ in range(tries):
        yield [rng.randrange(1, 30) for _ in range(n)]


# ---------------------------------------------------------------------------
# saturation of graded ideals

def quotient_multiplication_injective(ideal, d, p=None):
    """Is multiplication (S/I)_d -> (S/I)_{d+1}^n by (x_1..x_n) injective?

    Rank is certified modulo a prime: a full modular rank bounds the exact
    rank from below, which is enough for injectivity.  On a modular rank
    drop the exact rank decides.
    """
    gb = ideal.groebner()
    leads = [g.leading_monomial() for g in gb]
    n = ideal.n
    src = standard_monomials(leads, n, d)
    if not src:
        return True
    tgt = standard_monomials(leads, n, d + 1)
    index = {m: r for r, m in enumerate(tgt)}
    cols = []
    for m in src:
        col = [Fraction(0)] * (len(tgt) * n)
        for i in range(n):
            xm = list(m)
            xm[i] += 1
            r = normal_form(Form.monomial(ideal.ring, n, tuple(xm)), gb)
            for mm, c in r.terms.items():
                col[i * len(tgt) + index[mm]] += c
        cols.append(col)
    rows = linalg.transpose(cols)
    want = len(src)
    for prime in (p or modp.DEFAULT_PRIME,) + modp.CERT_PRIMES[:1]:
        try:
            if modp.rank_mod_p(modp.reduce_matrix(rows, prime), prime) == want:
                return True
        except Exception:
            continue
    return linalg.rank(rows) == want


def has_zero_socle_to(ideal, dmax):
    """No nonzero element of (S/I)_d killed by every variable, d <= dmax."""
    return all(quotient_multiplication_injective(ideal, d)
               for d in range(dmax + 1))


def saturate(ideal, dmax=None, strong=False):
    """Saturation with respect to the irrelevant maximal ideal.

    Computed as I : l^infinity for a linear form l, certified by three
    checks: the result contains I, its quotient has zero socle through the
    determinacy window (so the result is itself saturated), and its piece
    dimensions match I's at the top of the window (saturation only changes
    low degrees).  A bad l fails certification and the next candidate is
    tried; if all candidates fail, the n single-variable saturations are
    intersected degree by degree, which is slower but unconditional.

    strong=True additionally verifies J : x_i^infinity = J for every
    variable by independent Groebner computations.
    """
    from .ideals import GradedIdeal

    gens = [g for g in ideal.generators if not g.is_zero()]
    if not gens:
        return GradedIdeal(ideal.ring, ideal.n, [])
    n = ideal.n
    for coeffs in _linear_candidates(n, 4):
        sat_gens = saturate_linear_gens(gens, coeffs)
        J = GradedIdeal(ideal.ring, n, sat_gens)
        if not all(J.contains(g) for g in gens):
            continue
        D = max(ideal.determinacy_bound(), J.determinacy_bound())
        if dmax is not None:
            D = max(D, dmax)
        if any(J.dim_piece(d) != ideal.dim_piece(d)
               for d in (D, D + 1, D + 2)):
            continue
        if not has_zero_socle_to(J, D + 1):
            continue
        if strong and not _variable_colons_trivial(J):
            continue
        return J.minimalized()
    return _saturate_by_intersection(ideal, dmax)


def _variable_colons_trivial(J):
    for i in range(J.n):
        for g in saturate_variable_gens(J.generators, i):
            if not J.contains(g):
                return False
    return True


def _saturate_by_intersection(ideal, dmax=None):
    """Intersection of the n single-variable saturations (fallback path)."""
    from .ideals import GradedIdeal

    parts = [GradedIdeal(ideal.ring, ideal.n,
                         saturate_variable_gens(ideal.generators, i))
             for i in range(ideal.n)]
    out = parts[0]
    for p in parts[1:]:
        out = out.intersect(p, dmax=dmax)
    return out.minimalized()


def is_saturated(ideal, dmax=None):
    """Does I equal its saturation?

    The saturation can only add elements, and it agrees with I in high
    degrees, so I is saturated exactly when S/I has no socle below the
    determinacy window.
    """
    if not any(not g.is_zero() for g in ideal.generators):
        return True
    D = ideal.determinacy_bound() if dmax is None else dmax
    return has_zero_socle_to(ideal, D + 1)


# ---------------------------------------------------------------------------
# syzygies

def module_syzygies(generators, d, key=grevlex_key):
    """Basis of the degree-d syzygies of the generator list.

    A syzygy is a tuple (a_1, ..., a_k) with deg a_i = d - deg g_i and
    sum a_i g_i = 0; returned as tuples of Forms (zero where the block is
    empty).
    """
    gens = list(generators)
    if not gens:
        return []
    ring, n = gens[0].ring, gens[0].n
    blocks = []
    columns = []
    target = monomials(n, d, key)
    index = {m: r for r, m in enumerate(target)}
    for i, g in enumerate(gens):
        e = d - g.degree
        ms = monomials(n, e, key) if e >= 0 else []
        blocks.append((e, ms))
        for m in ms:
            col = [Fraction(0)] * len(target)
            for mg, c in g.terms.items():
                col[index[mono_mul(m, mg)]] += c
            columns.append(col)
    if not columns:
        return []
    rows = linalg.transpose(columns)
    out = []
    for v in linalg.kernel_basis(rows, len(columns)):
        tup = []
        pos = 0
        for i, (e, ms) in enumerate(blocks):
            if e < 0:
                tup.append(Form.zero(ring, n, 0))
                continue
            coeffs = v[pos:pos + len(ms)]
            pos += len(ms)
            tup.append(Form(ring, n, e, dict(zip(ms, coeffs))))
        out.append(tuple(tup))
    return out


def linear_syzygies(generators):
    """Syzygies with linear coefficients among equal-degree generators."""
    gens = list(generators)
    if not gens:
        return []
    degs = {g.degree for g in gens}
    if len(degs) != 1:
        raise ValueError("linear syzygies need generators of equal degree")
    return module_syzygies(gens, degs.pop() + 1)
