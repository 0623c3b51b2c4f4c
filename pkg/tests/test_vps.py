"""Polar simplices, the VPS membership verdict, unsaturated limits,
local invariants, Macaulay growth."""

from fractions import Fraction

import pytest

from polarsimplex import grobner, linalg
from polarsimplex.apolarity import Quadric, apply_diff, inverse_quadric
from polarsimplex.errors import DegenerateParameters, DomainError
from polarsimplex.ideals import hilbert_function
from polarsimplex.rings import format_form, parse_form
from polarsimplex.vps import (build_unsat_limit, cayley_orthogonal,
                              check_vps, detect_line, family_builder,
                              hf_growth_ok, is_locally_gorenstein,
                              local_ring_invariants, macaulay_bound,
                              points_ideal, polar_simplex_sample,
                              random_points, socle_dimension,
                              standard_split_quadric,
                              unsaturated_limit_family)


def test_standard_split_quadric_pins():
    q4 = standard_split_quadric(4)
    assert q4.form == parse_form("y1*y4 + y2*y3")
    assert format_form(q4.form) == "y2*y3 + y1*y4"  # grevlex term order
    q5 = standard_split_quadric(5)
    assert q5.form == parse_form("y1*y4 + y2*y3 + 1/2*y5^2")
    assert q5.rank() == 5


def test_polar_simplex_sample_expands_to_q():
    for n in (4, 5):
        q = standard_split_quadric(n)
        for seed in range(4):
            ps = polar_simplex_sample(q, seed=seed)
            assert ps.verify()
            assert len(ps.points) == n


def test_polar_simplex_ideal_is_apolar_and_spanning():
    q = standard_split_quadric(4)
    ps = polar_simplex_sample(q, seed=2)
    I = ps.ideal()
    hf = hilbert_function(I)
    assert hf[1] == 4 and hf.eventual == 4
    for f in I.piece(2):
        assert apply_diff(f, q.form).is_zero()
    verdict = check_vps(I, q)
    assert verdict.in_vps and verdict.saturated


def test_cayley_orthogonal_exact():
    for n in (4, 5):
        q = standard_split_quadric(n)
        g = cayley_orthogonal(q, seed=n)
        gT = linalg.transpose(g)
        assert linalg.matmul(gT, linalg.matmul(q.gram, g)) == q.gram
        assert linalg.det(g) != 0


def test_check_vps_rejects_wrong_ring_and_singular():
    q = standard_split_quadric(4)
    I = points_ideal(random_points(4, 4, seed=1, spanning=True))
    with pytest.raises(DomainError):
        check_vps(I, Quadric(parse_form("y1^2", ring="T", n=4)))
    bad = Quadric(parse_form("x1*x4 + x2*x3", ring="S", n=4))
    with pytest.raises(DomainError):
        check_vps(I, bad)


def test_check_vps_saturated_shape():
    q = standard_split_quadric(4)
    verdict = check_vps(polar_simplex_sample(q, seed=0).ideal(), q)
    assert verdict.saturated
    assert verdict.sbl_necessary is None and verdict.kri is None
    assert verdict.line is None
    d = verdict.as_dict()
    assert d["line"] is None and d["kri"] is None
    assert d["hilbert"]["eventual"] == 4


# -- unsaturated limits (n = 4 pinned line configurations) -------------------

_POSITIVE_GAMMA = [(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0), (1, 2, 0, 0)]
_NEGATIVE_GAMMA = [(1, 0, 0, 0), (0, 0, 0, 1), (1, 0, 0, 1), (1, 0, 0, 2)]


def test_build_unsat_limit_line_inside_inverse_quadric():
    q = standard_split_quadric(4)
    ideal, verdict = build_unsat_limit(_POSITIVE_GAMMA, q)
    assert verdict.in_vps
    assert not verdict.saturated
    assert verdict.sbl_necessary is True
    assert verdict.kri is True
    assert verdict.details["line_in_inverse_quadric"] is True
    assert verdict.details["not_saturable"] is False
    # the detected line is the one the points were put on
    L = linalg.row_basis([list(map(Fraction, r)) for r in verdict.line])
    expect = linalg.row_basis([[Fraction(1), 0, 0, 0], [0, Fraction(1), 0, 0]])
    assert L == expect


def test_build_unsat_limit_line_outside_inverse_quadric():
    q = standard_split_quadric(4)
    ideal, verdict = build_unsat_limit(_NEGATIVE_GAMMA, q)
    assert not verdict.saturated
    assert verdict.kri is False
    assert verdict.details["not_saturable"] is True


def test_unsat_limit_ideal_is_intersection():
    q = standard_split_quadric(4)
    ideal, _ = build_unsat_limit(_POSITIVE_GAMMA, q)
    gamma = points_ideal(_POSITIVE_GAMMA)
    assert gamma.intersect(q.perp()).equals(ideal)
    assert not grobner.saturate(ideal).equals(ideal)


def test_detect_line_recovers_support_line():
    q = standard_split_quadric(4)
    ideal, _ = build_unsat_limit(_POSITIVE_GAMMA, q)
    L = detect_line(ideal, seed=0)
    assert L.dim == 2
    got = linalg.row_basis([list(map(Fraction, r)) for r in L.rows])
    assert got == linalg.row_basis(
        [[Fraction(1), 0, 0, 0], [0, Fraction(1), 0, 0]])


# -- the n = 5 pencil --------------------------------------------------------

def test_family_t1_saturated_member():
    q = standard_split_quadric(5)
    I = unsaturated_limit_family(1)
    verdict = check_vps(I, q)
    assert verdict.in_vps and verdict.saturated


def test_family_t0_unsaturated_member():
    q = standard_split_quadric(5)
    I = unsaturated_limit_family(0)
    verdict = check_vps(I, q)
    assert verdict.in_vps and not verdict.saturated
    sat = grobner.saturate(I)
    gens = sorted(format_form(g) for g in sat.generators)
    assert gens == ["x1*x5", "x1^4", "x3", "x4", "x5^2"]
    assert list(hilbert_function(sat).values)[:5] == [1, 3, 4, 5, 5]
    assert hilbert_function(sat).eventual == 5


def test_local_invariants_at_socle_point():
    I = unsaturated_limit_family(0)
    sat = grobner.saturate(I)
    point = [0, 1, 0, 0, 0]
    assert local_ring_invariants(sat, point) == (5, 2)
    assert socle_dimension(sat, point) == 2
    assert not is_locally_gorenstein(sat, point)


def test_local_invariants_reduced_point():
    # a reduced point is length 1 with socle dimension 1 (Gorenstein)
    I = points_ideal([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    assert local_ring_invariants(I, (1, 0, 0, 0)) == (1, 1)
    assert is_locally_gorenstein(I, (1, 0, 0, 0))


def test_local_invariants_requires_support_point():
    I = points_ideal([(1, 0, 0, 0), (0, 1, 0, 0)])
    with pytest.raises(DomainError):
        local_ring_invariants(I, (0, 0, 1, 0))


# -- family builders ---------------------------------------------------------

def test_family_builder_f1():
    q = standard_split_quadric(5)
    params = {
        "line": [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0)],
        "gamma": [(1, 0), (0, 1), (1, 1), (1, 2)],
        "point": (0, 0, 1, 0, 0),
    }
    I = family_builder("F1", params, q)
    verdict = check_vps(I, q)
    assert verdict.in_vps


def test_family_builder_f1_degenerate_point():
    q = standard_split_quadric(5)
    params = {
        "line": [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0)],
        "gamma": [(1, 0), (0, 1), (1, 1), (1, 2)],
        "point": (1, 3, 0, 0, 0),  # on the line
    }
    with pytest.raises(DegenerateParameters):
        family_builder("F1", params, q)


def test_family_builder_f2():
    # a cubic of the shape (form on the line)^2 * (form on the polar
    # plane) leaves exactly one extra degree-2 condition, so H(2) = 5
    q = standard_split_quadric(5)
    params = {
        "line": [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0)],
        "gamma": [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3)],
        "cubic": "y1^2*y5",
    }
    I = family_builder("F2", params, q)
    assert I.hilbert(2) == 5
    verdict = check_vps(I, q)
    assert verdict.in_vps and not verdict.saturated


def test_family_builder_f2_generic_cubic_degenerate():
    q = standard_split_quadric(5)
    params = {
        "line": [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0)],
        "gamma": [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3)],
        "cubic": "y1^3 + y2^3 + y3^3 + y4^3 + y5^3",
    }
    with pytest.raises(DegenerateParameters):
        family_builder("F2", params, q)


def test_family_builder_rejects_small_n():
    q = standard_split_quadric(4)
    with pytest.raises(DomainError):
        family_builder("F1", {}, q)


# -- Macaulay growth ---------------------------------------------------------

def _lex_quotient_growth(h, d, nvars=15):
    """Brute-force oracle: keep the h lex-smallest degree-d monomials
    (the lex-segment quotient, which realizes extremal growth when the
    variable count imposes no ceiling) and count the degree-(d+1)
    monomials all of whose divisors were kept."""
    from polarsimplex.rings import monomials
    kept = set(sorted(monomials(nvars, d))[:h])
    count = 0
    for mu in monomials(nvars, d + 1):
        if all(tuple(mu[k] - (1 if k == i else 0) for k in range(nvars))
               in kept
               for i in range(nvars) if mu[i] > 0):
            count += 1
    return count


def test_macaulay_bound_small_oracle():
    for d in (1, 2, 3):
        for h in range(0, 13):
            assert macaulay_bound(h, d) == _lex_quotient_growth(h, d)


def test_macaulay_bound_pins():
    # H(1) = n allows H(2) = binom(n+1, 2)
    assert macaulay_bound(4, 1) == 10
    assert macaulay_bound(5, 1) == 15
    # constant-h plateau is always allowed
    assert macaulay_bound(5, 4) >= 5
    with pytest.raises(DomainError):
        macaulay_bound(3, 0)
    with pytest.raises(DomainError):
        macaulay_bound(-1, 2)


def test_hf_growth_ok():
    assert hf_growth_ok([1, 4, 4, 4, 4])
    assert hf_growth_ok([1, 3, 4, 5, 5, 5])
    assert not hf_growth_ok([1, 2, 4])  # 2 -> 4 violates growth from h=2
    assert hf_growth_ok([1, 2, 3, 4])
