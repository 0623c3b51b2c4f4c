"""Apolarity: inverse quadrics, apolar ideals, the six polarity
conditions, quadric witness search, first-order orthogonalization."""

import random
from fractions import Fraction

import pytest

from polarsimplex import linalg
from polarsimplex.apolarity import (LinearSubspace, Quadric, apolar_ideal,
                                    apolar_quadrics, apply_diff,
                                    derivation_apply, inverse_quadric,
                                    orthogonalize_first_order, pairing,
                                    polarity_conditions)
from polarsimplex.errors import DomainError, SingularQuadric
from polarsimplex.ideals import GradedIdeal, hilbert_function
from polarsimplex.rings import Form, format_form, monomials, parse_form
from polarsimplex.vps import (points_ideal, random_points,
                              standard_split_quadric)


def _random_full_quadric(ring, n, rng, bound=5):
    while True:
        A = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                A[i][j] = A[j][i] = Fraction(rng.randint(-bound, bound))
        q = Quadric.from_matrix(ring, n, A)
        if q.rank() == n:
            return q


def _random_subspace(ring, n, dim, rng):
    while True:
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(n)]
                for _ in range(dim)]
        if linalg.rank([row[:] for row in rows]) == dim:
            return LinearSubspace(ring, n, rows)


# -- inverse quadrics --------------------------------------------------------

def test_inverse_quadric_pinned_n5():
    q = Quadric(parse_form("y1*y3 + y2*y4 + y5^2"))
    inv = inverse_quadric(q)
    assert format_form(inv.form) == "4*x1*x3 + 4*x2*x4 + x5^2"


def test_inverse_gram_is_matrix_inverse():
    rng = random.Random(12)
    for _ in range(6):
        q = _random_full_quadric("T", 4, rng)
        inv = inverse_quadric(q)
        assert inv.gram == linalg.inverse(q.gram)


def test_double_inverse_is_identity():
    rng = random.Random(3)
    for n in (3, 4, 5):
        q = _random_full_quadric("T", n, rng)
        assert inverse_quadric(inverse_quadric(q)).form == q.form


def test_inverse_rejects_singular():
    q = Quadric(parse_form("y1^2", ring="T", n=3))
    with pytest.raises(SingularQuadric):
        inverse_quadric(q)


def test_gram_convention():
    # cross coefficient c_ij gives A_ij = c_ij / 2
    q = Quadric(parse_form("y1*y4 + y2*y3"))
    assert q.gram[0][3] == Fraction(1, 2)
    assert q.gram[1][2] == Fraction(1, 2)
    assert Quadric.from_matrix("T", 4, q.gram).form == q.form


# -- apolar ideals -----------------------------------------------------------

def test_apolar_ideal_of_monomial():
    g = parse_form("y1^2*y2", ring="T", n=3)
    I = apolar_ideal(g)
    # annihilator of a monomial is spanned by x^b with b not <= (2,1,0)
    assert I.contains(parse_form("x1^3", ring="S", n=3))
    assert I.contains(parse_form("x2^2", ring="S", n=3))
    assert I.contains(parse_form("x3", ring="S", n=3))
    assert not I.contains(parse_form("x1*x2", ring="S", n=3))


def test_apolar_ideal_quadric_codimension_one():
    rng = random.Random(7)
    for n in (3, 4, 5):
        q = _random_full_quadric("T", n, rng)
        I = apolar_ideal(q.form)
        hf = hilbert_function(I)
        assert hf[0] == 1 and hf[1] == n and hf[2] == 1 and hf[3] == 0


def test_apolar_pieces_are_kernels():
    rng = random.Random(19)
    g_terms = {m: Fraction(rng.randint(-3, 3)) for m in monomials(3, 3)}
    g = Form("T", 3, 3, {m: c for m, c in g_terms.items() if c})
    I = apolar_ideal(g)
    for e in (1, 2, 3):
        for f in I.piece(e):
            assert apply_diff(f, g).is_zero()
        # dimension = dim S_e - rank of the pairing
        ms = monomials(3, e)
        rows = [apply_diff(Form("S", 3, e, {m: Fraction(1)}), g).vector()
                for m in ms]
        assert I.dim_piece(e) == len(ms) - linalg.rank(rows)


def test_apolar_ideal_of_zero_rejected():
    with pytest.raises(DomainError):
        apolar_ideal(Form.zero("T", 3, 2))


# -- polarity conditions (the six-way equivalence) ---------------------------

def test_polarity_positive_pinned():
    # L = N = <y1,y2> against y1y4+y2y3: q(L^perp) = <y1,y2> = N, so all
    # six conditions hold (the ruling-plane case)
    q = Quadric(parse_form("y1*y4 + y2*y3"))
    L = LinearSubspace("T", 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    rep = polarity_conditions(L, L, q)
    assert rep.agree() and rep.all_hold()


def test_polarity_negative_pinned():
    # L = N = <y1,y4>: q(L^perp) = <y2,y3> != N, all six fail together
    q = Quadric(parse_form("y1*y4 + y2*y3"))
    L = LinearSubspace("T", 4, [[1, 0, 0, 0], [0, 0, 0, 1]])
    rep = polarity_conditions(L, L, q)
    assert rep.agree() and not rep.all_hold()


def test_polarity_dimension_precondition():
    q = Quadric(parse_form("y1*y4 + y2*y3"))
    L = LinearSubspace("T", 4, [[1, 0, 0, 0]])
    with pytest.raises(DomainError):
        polarity_conditions(L, L, q)


def test_polarity_six_conditions_agree_seeded():
    # small version of the full lemma suite (the 200-trial run is in the
    # acceptance tests and the lemma-3.4 CLI target)
    rng = random.Random(0)
    positives = 0
    for t in range(40):
        n = 4 if t % 2 == 0 else 5
        q = _random_full_quadric("T", n, rng)
        l = rng.randrange(1, n)
        L = _random_subspace("T", n, l, rng)
        if t % 4 < 2:
            image = [apply_diff(u, q.form) for u in L.perp().basis()]
            N = LinearSubspace("T", n, [f.vector() for f in image])
        else:
            N = _random_subspace("T", n, n - l, rng)
        rep = polarity_conditions(L, N, q)
        assert rep.agree()
        positives += rep.all_hold()
    assert positives > 0
    assert positives < 40


def test_polarity_report_shape():
    q = Quadric(parse_form("y1*y4 + y2*y3"))
    L = LinearSubspace("T", 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    rep = polarity_conditions(L, L, q)
    d = rep.as_dict()
    assert set(d) == set(rep.KEYS) and len(rep.KEYS) == 6
    assert list(rep) == list(rep.values)


# -- quadric witness search --------------------------------------------------

def test_apolar_quadrics_spanning_points():
    # reduced length-4 spanning schemes in P^3 always admit a full-rank
    # apolar quadric; small version of the acceptance suite
    for seed in range(8):
        I = points_ideal(random_points(4, 4, seed=seed, spanning=True))
        res = apolar_quadrics(I, seed=seed)
        assert res.full_rank_exists
        w = res.witness
        assert w.rank() == 4
        for f in I.piece(2):
            assert apply_diff(f, w.form).is_zero()


def test_apolar_quadrics_no_witness_certified():
    from polarsimplex import grobner
    from polarsimplex.vps import unsaturated_limit_family
    sat = grobner.saturate(unsaturated_limit_family(0))
    res = apolar_quadrics(sat, require_spanning=False)
    assert not res.full_rank_exists
    assert res.witness is None
    assert res.certificate == "determinant-vanishes"


# -- first-order orthogonalization -------------------------------------------

def _chart_ideal():
    q = standard_split_quadric(4)
    base = GradedIdeal.from_strings("S", 4, ["x3", "x4"])
    return base.intersect(q.perp()).minimalized(), q


def test_orthogonalize_zero_deformation():
    I0, q = _chart_ideal()
    F = orthogonalize_first_order(
        I0, q, [Form.zero("S", 4, 2) for _ in I0.piece(2)])
    assert all(all(c == 0 for c in row) for row in F) or _residual_ok(
        I0, q, [Form.zero("S", 4, 2) for _ in I0.piece(2)], F)


def _residual_ok(I0, q, lifts, F):
    for v, u in zip(I0.piece(2), lifts):
        eps_part = u + derivation_apply(F, v)
        if pairing(eps_part, q.form) != 0:
            return False
    return True


def test_orthogonalize_undoes_coordinate_change():
    I0, q = _chart_ideal()
    rng = random.Random(5)
    E = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(4)]
    lifts = [derivation_apply(E, v) for v in I0.piece(2)]
    F = orthogonalize_first_order(I0, q, lifts)
    assert _residual_ok(I0, q, lifts, F)
    # F = -E is one valid solution; the solver's answer must work too
    assert _residual_ok(I0, q, lifts,
                        [[-e for e in row] for row in E])


def test_orthogonalize_random_deformations():
    # small version of the acceptance suite: arbitrary degree-2 lifts
    I0, q = _chart_ideal()
    rng = random.Random(31)
    ms = monomials(4, 2)
    for _ in range(10):
        lifts = []
        for v in I0.piece(2):
            terms = {m: Fraction(rng.randint(-4, 4)) for m in ms}
            lifts.append(Form("S", 4, 2,
                              {m: c for m, c in terms.items() if c}))
        F = orthogonalize_first_order(I0, q, lifts)
        assert _residual_ok(I0, q, lifts, F)


def test_orthogonalize_requires_apolar_start():
    q = standard_split_quadric(4)
    I0 = GradedIdeal.from_strings("S", 4, ["x1*x4"])  # pairs to 1, not apolar
    with pytest.raises(DomainError):
        orthogonalize_first_order(I0, q, [Form.zero("S", 4, 2)])
