"""Forms, monomial orders, parsing and the differentiation action."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarsimplex.rings import (Form, dual_ring, format_form, grevlex_key,
                                mono_div, mono_divides, mono_lcm, mono_mul,
                                monomials, parse_form, partial)
from polarsimplex.apolarity import apply_diff, pairing


def mono(n, *exps):
    m = [0] * n
    for i, e in enumerate(exps):
        m[i] = e
    return tuple(m)


def test_monomials_count_matches_binomial():
    for n in range(1, 6):
        for d in range(0, 5):
            assert len(monomials(n, d)) == math.comb(n + d - 1, d)


def test_monomials_distinct_and_degree():
    ms = monomials(4, 3)
    assert len(set(ms)) == len(ms)
    assert all(sum(m) == 3 for m in ms)


def test_grevlex_pinned_order():
    # descending grevlex in 3 variables, degree 2
    ms = monomials(3, 2)
    names = ["".join("xyz"[i] * e for i, e in enumerate(m)) for m in ms]
    assert names == ["xx", "xy", "yy", "xz", "yz", "zz"]


def test_mono_arithmetic():
    a = mono(3, 2, 1, 0)
    b = mono(3, 0, 1, 1)
    assert mono_mul(a, b) == (2, 2, 1)
    assert mono_lcm(a, b) == (2, 1, 1)
    assert mono_divides(mono(3, 1, 1, 0), a)
    assert not mono_divides(b, a)
    assert mono_div(mono_mul(a, b), b) == a


small_fracs = st.fractions(
    min_value=-4, max_value=4, max_denominator=3)


def random_form(ring, n, d, draw_coeffs):
    ms = monomials(n, d)
    terms = {m: c for m, c in zip(ms, draw_coeffs) if c}
    return Form(ring, n, d, terms)


@st.composite
def forms(draw, ring="S", n=3, dmax=3):
    d = draw(st.integers(min_value=1, max_value=dmax))
    ms = monomials(n, d)
    coeffs = draw(st.lists(small_fracs, min_size=len(ms),
                           max_size=len(ms)))
    return Form(ring, n, d, {m: c for m, c in zip(ms, coeffs) if c})


@given(forms())
@settings(max_examples=80, deadline=None)
def test_format_parse_round_trip(f):
    if f.is_zero():
        return
    g = parse_form(format_form(f), ring=f.ring, n=f.n)
    assert g == f


@given(forms(n=3, dmax=2), forms(n=3, dmax=2), forms(n=3, dmax=2))
@settings(max_examples=40, deadline=None)
def test_distributivity(f, g, h):
    if f.degree != g.degree:
        return
    assert (f + g) * h == f * h + g * h


def test_parse_pinned_grammar():
    f = parse_form("3/2*x1^2*x3 - x2*x4^2", ring="S", n=4)
    assert f.terms[mono(4, 2, 0, 1)] == Fraction(3, 2)
    assert f.terms[mono(4, 0, 1, 0, 2)] == -1
    assert format_form(f) == "3/2*x1^2*x3 - x2*x4^2"


def test_parse_infers_ring_and_n():
    f = parse_form("y1*y3 + y2*y4 + y5^2")
    assert f.ring == "T" and f.n == 5 and f.degree == 2


def test_parse_error_position():
    with pytest.raises(ValueError, match="position 7"):
        parse_form("x1*x3 + @bad", ring="S", n=4)


def test_parse_rejects_mixed_rings():
    with pytest.raises(ValueError):
        parse_form("x1 + y2")


def test_parse_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        parse_form("x1^2 + x2", ring="S", n=2)


def test_partial_and_diff_convention():
    # x^a acts as the plain derivative, no factorial rescaling
    g = parse_form("y1^3", ring="T", n=2)
    x1 = Form.variable("S", 2, 0)
    assert apply_diff(x1, g) == parse_form("3*y1^2", ring="T", n=2)
    assert partial(g, 0) == parse_form("3*y1^2", ring="T", n=2)


def test_pairing_pinned_value():
    # the duality pin: <x1x4 + x2x3, y1y4 + y2y3> = 2
    f = parse_form("x1*x4 + x2*x3", ring="S", n=4)
    g = parse_form("y1*y4 + y2*y3", ring="T", n=4)
    assert pairing(f, g) == 2


@given(forms(n=2, dmax=2), forms(n=2, dmax=2), forms(ring="T", n=2, dmax=4))
@settings(max_examples=40, deadline=None)
def test_diff_is_multiplicative(f, fp, g):
    if f.degree + fp.degree > g.degree:
        return
    lhs = apply_diff(f * fp, g)
    rhs = apply_diff(f, apply_diff(fp, g))
    assert lhs == rhs


def test_dual_ring_involution():
    assert dual_ring("S") == "T" and dual_ring("T") == "S"


def test_form_vector_round_trip():
    f = parse_form("x1*x2 - 2*x3^2", ring="S", n=3)
    ms = monomials(3, 2)
    v = f.vector(ms)
    assert Form.from_vector("S", 3, 2, v, ms) == f
