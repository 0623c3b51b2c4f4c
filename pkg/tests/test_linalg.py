"""Exact linear algebra: the Bareiss rref against the naive reference."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from polarsimplex import linalg

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    nr = draw(st.integers(min_value=1, max_value=max_rows))
    nc = draw(st.integers(min_value=1, max_value=max_cols))
    return [[draw(fracs) for _ in range(nc)] for _ in range(nr)]


@given(matrices())
@settings(max_examples=120, deadline=None)
def test_rref_agrees_with_naive(rows):
    R1, r1, p1 = linalg.rref([row[:] for row in rows])
    R2, r2, p2 = linalg.rref_naive([row[:] for row in rows])
    assert (r1, p1) == (r2, p2)
    assert R1 == R2


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_annihilates(rows):
    nc = len(rows[0])
    for v in linalg.kernel_basis([row[:] for row in rows], nc):
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(rows):
    nc = len(rows[0])
    r = linalg.rank([row[:] for row in rows])
    k = len(linalg.kernel_basis([row[:] for row in rows], nc))
    assert r + k == nc


@given(matrices(max_rows=5, max_cols=5))
@settings(max_examples=60, deadline=None)
def test_solve_solves(rows):
    # build a guaranteed-consistent right-hand side
    x = [Fraction(i - 2, 3) for i in range(len(rows[0]))]
    b = [sum(a * c for a, c in zip(row, x)) for row in rows]
    sol = linalg.solve([row[:] for row in rows], b)
    assert sol is not None
    assert all(sum(a * c for a, c in zip(row, sol)) == bv
               for row, bv in zip(rows, b))


def test_solve_inconsistent():
    assert linalg.solve([[1, 0], [1, 0]], [1, 2]) is None


def test_det_and_inverse():
    A = [[Fraction(2), Fraction(1)], [Fraction(5), Fraction(3)]]
    assert linalg.det([row[:] for row in A]) == 1
    Ainv = linalg.inverse(A)
    assert linalg.matmul(A, Ainv) == linalg.identity(2)


@given(matrices(max_rows=4, max_cols=4), matrices(max_rows=4, max_cols=4))
@settings(max_examples=40, deadline=None)
def test_intersect_row_spaces(A, B):
    if len(A[0]) != len(B[0]):
        return
    C = linalg.intersect_row_spaces(A, B)
    RA, rA, pA = linalg.rref([row[:] for row in A])
    RB, rB, pB = linalg.rref([row[:] for row in B])
    for v in C:
        assert linalg.in_row_space(RA[:rA], pA, v)
        assert linalg.in_row_space(RB[:rB], pB, v)
    # dimension formula: dim(A cap B) = rank A + rank B - rank(A stacked B)
    rAB = linalg.rank([row[:] for row in A] + [row[:] for row in B])
    assert len(C) == rA + rB - rAB


def test_reduce_vector_membership():
    rows = [[1, 0, 2], [0, 1, 3]]
    R, r, piv = linalg.rref(rows)
    inside = [2, -1, 1]
    outside = [0, 0, 1]
    assert linalg.in_row_space(R[:r], piv, inside)
    assert not linalg.in_row_space(R[:r], piv, outside)


def test_row_basis_idempotent():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    B = linalg.row_basis(rows)
    assert len(B) == 2
    assert linalg.row_basis(B) == B
