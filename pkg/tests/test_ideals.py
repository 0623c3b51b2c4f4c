"""GradedIdeal: pieces, Hilbert functions, intersection, file format."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarsimplex import linalg
from polarsimplex.ideals import (GradedIdeal, HilbertFunction,
                                 hilbert_function, ideal_from_text,
                                 ideal_to_text, read_ideal, write_ideal)
from polarsimplex.rings import format_form, monomials, parse_form
from polarsimplex.vps import points_ideal, random_points


def test_piece_dimensions_monomial_ideal():
    I = GradedIdeal.from_strings("S", 3, ["x1^2", "x1*x2"])
    # degree 2: the two generators; degree 3: x1^2*{x1,x2,x3} + x1x2*{..}
    assert I.dim_piece(2) == 2
    assert I.dim_piece(3) == 5  # x1^3, x1^2x2, x1^2x3, x1x2^2, x1x2x3
    assert I.dim_piece(1) == 0


def test_contains_and_piece_are_consistent():
    I = GradedIdeal.from_strings("S", 3, ["x1*x3 - x2^2", "x1^2"])
    f = parse_form("x1^2*x3 - x1*x2^2", ring="S", n=3)
    assert I.contains(f)
    assert not I.contains(parse_form("x2*x3^2", ring="S", n=3))


def test_hilbert_function_points_oracle():
    # r general points in P^(n-1): H(d) = min(dim S_d, r)
    pts = random_points(4, 7, seed=2, spanning=True)
    I = points_ideal(pts)
    hf = hilbert_function(I)
    for d in range(0, 6):
        assert hf[d] == min(math.comb(4 + d - 1, d), 7)
    assert hf.eventual == 7


def test_hilbert_function_eq_list_and_repr():
    I = GradedIdeal.from_strings("S", 2, ["x1^2"])
    hf = hilbert_function(I)
    assert hf[0] == 1 and hf[1] == 2 and hf[2] == 2
    assert hf.eventual == 2
    assert hf == list(hf.values)
    assert "..." in repr(hf)


def test_coordinate_points_ideal():
    I = points_ideal([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert I.dim_piece(2) == 3  # the three off-diagonal products
    gens = sorted(format_form(g) for g in I.generators)
    assert gens == ["x1*x2", "x1*x3", "x2*x3"]


def test_intersect_matches_linear_algebra():
    rng = random.Random(4)
    I = points_ideal(random_points(3, 3, seed=1, spanning=True))
    J = points_ideal(random_points(3, 4, seed=9))
    K = I.intersect(J)
    for d in range(1, 6):
        ms = monomials(3, d)
        A = [f.vector(ms) for f in I.piece(d)]
        B = [f.vector(ms) for f in J.piece(d)]
        want = len(linalg.intersect_row_spaces(A, B)) if A and B else 0
        assert K.dim_piece(d) == want
    # membership both ways
    for f in K.piece(3):
        assert I.contains(f) and J.contains(f)


def test_from_pieces_round_trip():
    I = GradedIdeal.from_strings("S", 3, ["x1*x3 - x2^2", "x3^2"])
    top = I.max_generator_degree() + 1
    pieces = {d: I.piece(d) for d in range(1, top + 1)}
    J = GradedIdeal.from_pieces("S", 3, pieces)
    assert J.equals(I)
    # same generator count per degree (representatives may differ by sign)
    assert sorted(g.degree for g in J.generators) == \
        sorted(g.degree for g in I.generators)


def test_from_pieces_rejects_non_ideal():
    # declared degree-3 piece misses x1 * (declared degree-2 piece)
    f2 = parse_form("x1*x2", ring="S", n=2)
    f3 = parse_form("x1^3", ring="S", n=2)
    with pytest.raises(ValueError):
        GradedIdeal.from_pieces("S", 2, {2: [f2], 3: [f3]})


def test_minimalized_drops_redundant_generator():
    I = GradedIdeal.from_strings("S", 4, [
        "x2^4", "x4^2", "x2*x4", "x3*x4", "x1^2*x4",
        "x2*x3 - x1*x4", "x3^2", "x1*x3"])
    M = I.minimalized()
    assert len(M.generators) == 7  # x1^2*x4 is x1*x2*x3 modulo the rest
    assert M.equals(I)
    # genuine minimality: dropping any survivor changes the ideal
    for k in range(len(M.generators)):
        rest = GradedIdeal(M.ring, M.n,
                           M.generators[:k] + M.generators[k + 1:])
        assert not rest.equals(M)


def test_equals_and_agrees_to():
    I = GradedIdeal.from_strings("S", 2, ["x1"])
    J = GradedIdeal.from_strings("S", 2, ["x1", "x1^2"])
    K = GradedIdeal.from_strings("S", 2, ["x1^2"])
    assert I.equals(J)
    assert not I.equals(K)
    assert I.agrees_to(K, 1) is False or I.dim_piece(1) != K.dim_piece(1)


def test_file_format_round_trip(tmp_path):
    I = GradedIdeal.from_strings("S", 4, [
        "x1*x3 - x2^2", "3/2*x2*x4", "x3^2"])
    text = ideal_to_text(I)
    assert text.splitlines()[0] == "ring S n=4"
    J = ideal_from_text(text)
    assert J.equals(I) and J.ring == "S" and J.n == 4
    assert ideal_to_text(J) == text  # bit-exact round trip
    path = tmp_path / "ideal.txt"
    write_ideal(path, I)
    assert ideal_to_text(read_ideal(path)) == text


def test_file_format_comments_and_errors():
    text = "ring T n=2\n# a comment\ny1*y2  # trailing\n\ny2^2\n"
    I = ideal_from_text(text)
    assert I.ring == "T" and len(I.generators) == 2
    with pytest.raises(ValueError, match="header"):
        ideal_from_text("not a header\nx1\n")


def test_determinacy_bound_is_stable():
    I = points_ideal(random_points(3, 4, seed=5, spanning=True))
    D = I.determinacy_bound()
    hf = hilbert_function(I)
    assert all(hf[d] == hf.eventual for d in range(D, D + 3))


@given(st.integers(min_value=0, max_value=10))
@settings(max_examples=11, deadline=None)
def test_full_ring_and_zero_ideal(d):
    Z = GradedIdeal("S", 3, [])
    assert Z.dim_piece(d) == 0
    F = GradedIdeal.from_strings("S", 3, ["x1", "x2", "x3"])
    assert F.dim_piece(d) == (math.comb(3 + d - 1, d) if d >= 1 else 0)
