"""Groebner bases, normal forms, syzygies, saturation."""

import random
from fractions import Fraction

import pytest

from polarsimplex import grobner
from polarsimplex.ideals import GradedIdeal, hilbert_function
from polarsimplex.rings import Form, format_form, monomials, parse_form
from polarsimplex.vps import points_ideal, random_points


def _twisted_cubic():
    return GradedIdeal.from_strings("S", 4, [
        "x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"])


def test_buchberger_spolys_reduce_to_zero():
    # the defining property of a Groebner basis
    for gens in (_twisted_cubic().generators,
                 points_ideal(random_points(3, 4, seed=3)).generators):
        G = grobner.buchberger(gens)
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                s = grobner.s_poly(G[i], G[j])
                assert grobner.normal_form(s, G).is_zero()


def test_normal_form_is_remainder():
    I = _twisted_cubic()
    G = I.groebner()
    f = parse_form("x1^2*x3 + x2^3", ring="S", n=4)
    r = grobner.normal_form(f, G)
    assert I.contains(f - r)
    # normal form of any ideal member vanishes
    assert grobner.normal_form(G[0] * Form.variable("S", 4, 1), G).is_zero()


def test_normal_form_quotients_identity():
    I = _twisted_cubic()
    G = I.groebner()
    f = parse_form("x1*x2*x3 - x3^3 + x2^2*x4", ring="S", n=4)
    r, qs = grobner.normal_form_quotients(f, G)
    rebuilt = r
    for q, g in zip(qs, G):
        rebuilt = rebuilt + q * g
    assert rebuilt == f


def test_syzygy_generators_annihilate():
    G = _twisted_cubic().groebner()
    for rel in grobner.syzygy_generators(G):
        total = None
        for a, g in zip(rel, G):
            if a is None or a.is_zero():
                continue
            term = a * g
            total = term if total is None else total + term
        assert total is None or total.is_zero()


def test_reduce_basis_is_reduced():
    G = grobner.reduce_basis(grobner.buchberger(_twisted_cubic().generators))
    leads = [g.leading_monomial() for g in G]
    assert len(set(leads)) == len(leads)
    # no lead divides a monomial of another member
    from polarsimplex.rings import mono_divides
    for i, g in enumerate(G):
        for m in g.terms:
            assert not any(mono_divides(leads[j], m)
                           for j in range(len(G)) if j != i)


def test_standard_monomials_count_quotient():
    I = _twisted_cubic()
    leads = I.lead_monomials()
    for d in range(0, 6):
        std = grobner.standard_monomials(leads, 4, d)
        assert len(std) == hilbert_function(I)[d]


def test_saturate_pinned_example():
    I = GradedIdeal.from_strings("S", 4, [
        "x2^4", "x4^2", "x2*x4", "x3*x4", "x1^2*x4",
        "x2*x3 - x1*x4", "x3^2", "x1*x3"])
    sat = grobner.saturate(I)
    assert sorted(format_form(g) for g in sat.generators) == \
        ["x2^4", "x3", "x4"]
    assert not grobner.is_saturated(I)
    assert grobner.is_saturated(sat)


def test_saturate_idempotent_and_contains():
    I = GradedIdeal.from_strings("S", 3, ["x1^2", "x1*x2", "x1*x3"])
    sat = grobner.saturate(I)
    assert sorted(format_form(g) for g in sat.generators) == ["x1"]
    assert sat.contains_ideal(I)
    assert grobner.saturate(sat).equals(sat)


def test_saturated_ideal_is_fixed_point():
    I = points_ideal(random_points(4, 5, seed=8, spanning=True))
    assert grobner.is_saturated(I)
    assert grobner.saturate(I).equals(I)


def test_saturation_degreewise_colon_oracle():
    """sat(I)_d = (I_{d+E} : S_E) once E is big enough.

    A degree-d form f is in the saturation iff S_E * f lands inside I
    for some E; checking membership of every monomial multiple against
    the graded pieces is an independent route to the same answer.
    """
    I = GradedIdeal.from_strings("S", 4, [
        "x2^4", "x4^2", "x2*x4", "x3*x4",
        "x2*x3 - x1*x4", "x3^2", "x1*x3"])
    sat = grobner.saturate(I)
    E = 4
    for d in range(1, 4):
        ms = monomials(4, d)
        cnt = 0
        for m in ms:
            f = Form("S", 4, d, {m: Fraction(1)})
            if all(I.contains(f * Form("S", 4, E, {me: Fraction(1)}))
                   for me in monomials(4, E)):
                cnt += 1
        # monomial count is a lower bound; compare spans via membership
        assert cnt <= sat.dim_piece(d)
        for m in ms:
            f = Form("S", 4, d, {m: Fraction(1)})
            in_colon = all(
                I.contains(f * Form("S", 4, E, {me: Fraction(1)}))
                for me in monomials(4, E))
            assert in_colon == sat.contains(f)


def test_saturate_strong_agrees():
    I = GradedIdeal.from_strings("S", 4, [
        "x2^4", "x4^2", "x2*x4", "x3*x4",
        "x2*x3 - x1*x4", "x3^2", "x1*x3"])
    assert grobner.saturate(I, strong=True).equals(grobner.saturate(I))


def test_linear_syzygies_of_quadric_chart():
    from polarsimplex.vps import standard_split_quadric
    q = standard_split_quadric(4)
    base = GradedIdeal.from_strings("S", 4, ["x3", "x4"])
    V = base.intersect(q.perp()).piece(2)
    rels = grobner.linear_syzygies(V)
    for rel in rels:
        total = None
        for a, v in zip(rel, V):
            if a is None or (hasattr(a, "is_zero") and a.is_zero()):
                continue
            term = a * v
            total = term if total is None else total + term
        assert total is None or total.is_zero()


def test_has_zero_socle_to():
    sat = GradedIdeal.from_strings("S", 3, ["x1"])
    assert grobner.has_zero_socle_to(sat, 4)
    unsat = GradedIdeal.from_strings("S", 3, ["x1^2", "x1*x2", "x1*x3"])
    assert not grobner.has_zero_socle_to(unsat, 4)
