"""Modular rank engines: compiled backend, numpy fallback, panel kernel.

For matrices with entries below b and dimension k, every k x k minor is
bounded by k! * b^k; keeping that below the smallest prime in use makes
the modular rank provably equal to the rational rank, so these tests
cannot flake on an unlucky prime.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarsimplex import linalg, modp
from polarsimplex import _modp_np as fallback
from polarsimplex.errors import BadReduction

P_BIG = modp.DEFAULT_PRIME      # 31-bit: scalar pivot path
P_PANEL = modp.BLOCK_PRIMES[0]  # 22-bit: float64 panel path


@st.composite
def int_matrices(draw, max_dim=6, bound=4):
    nr = draw(st.integers(min_value=1, max_value=max_dim))
    nc = draw(st.integers(min_value=1, max_value=max_dim))
    ent = st.integers(min_value=-bound, max_value=bound)
    return [[draw(ent) for _ in range(nc)] for _ in range(nr)]


@given(int_matrices())
@settings(max_examples=100, deadline=None)
def test_rank_mod_p_equals_rational_rank(rows):
    # 6! * 4^6 = 2949120 is far below both primes
    exact = linalg.rank([row[:] for row in rows])
    assert modp.rank_mod_p(rows, P_BIG) == exact
    assert modp.rank_mod_p(rows, P_PANEL) == exact


@given(int_matrices())
@settings(max_examples=100, deadline=None)
def test_fast_rank_agrees_both_paths(rows):
    exact = linalg.rank([row[:] for row in rows])
    assert modp.rank_mod_p_fast(rows, P_PANEL) == exact   # panel kernel
    assert modp.rank_mod_p_fast(rows, P_BIG) == exact     # scalar path


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_pivots_mod_p_rows_are_independent(rows):
    for p in (P_PANEL, P_BIG):
        r, prow, pcol = modp.pivots_mod_p(rows, p)
        assert len(prow) == r and len(pcol) == r
        assert len(set(prow)) == r
        sub = [rows[i] for i in prow]
        assert linalg.rank([row[:] for row in sub]) == r


def test_panel_elim_panel_size_invariance():
    rng = np.random.default_rng(5)
    a = rng.integers(-3, 4, size=(40, 55))
    a[13] = a[4] * 2 - a[7]          # force rank deficiency
    a[29] = a[0] + a[1]
    want = None
    for panel in (1, 3, 8, 256):
        r, prow, pcol = modp._panel_elim(a, P_PANEL, panel=panel)
        if want is None:
            want = (r, pcol)
        assert (r, pcol) == want
        sub = a[np.array(prow)]
        assert modp.rank_mod_p(sub, P_BIG) == r


def test_panel_elim_does_not_mutate_input():
    rng = np.random.default_rng(9)
    a = rng.integers(-9, 10, size=(20, 30))
    before = a.copy()
    modp._panel_elim(a, P_PANEL)
    assert np.array_equal(a, before)


def test_scalar_and_panel_agree_on_larger_matrix():
    rng = np.random.default_rng(11)
    a = rng.integers(0, 1000, size=(120, 90))
    a[50:] = a[:70] * 3              # heavy rank collapse
    rp, prow_p, pcol_p = modp._panel_elim(a, P_PANEL)
    rs, prow_s, pcol_s = modp._pivots_scalar(a, P_BIG)
    assert rp == rs == 70
    assert pcol_p == pcol_s


def test_backend_matches_fallback():
    rng = np.random.default_rng(3)
    a = rng.integers(0, P_BIG, size=(60, 45), dtype=np.int64)
    assert modp.BACKEND in ("cython", "numpy")
    r1 = modp.rank_mod_p(a, P_BIG)
    r2 = int(fallback.rank_mod_p(a % P_BIG, P_BIG))
    assert r1 == r2
    R1, piv1 = modp.rref_mod_p(a, P_BIG)
    R2, piv2 = fallback.rref_mod_p(a % P_BIG, P_BIG)
    assert piv1 == piv2
    assert np.array_equal(np.asarray(R1), np.asarray(R2))


def test_kernel_mod_p_annihilates():
    rng = np.random.default_rng(7)
    a = rng.integers(-4, 5, size=(6, 10))
    for p in (P_BIG, P_PANEL):
        K = modp.kernel_mod_p(a, p)
        assert K.shape[0] == 10 - modp.rank_mod_p(a, p)
        prod = (a % p).astype(object) @ K.T.astype(object)  # no overflow
        assert np.all(prod % p == 0)


def test_reduce_matrix_fractions_and_negatives():
    from fractions import Fraction
    rows = [[Fraction(1, 2), -1], [Fraction(-3, 4), 2]]
    out = modp.reduce_matrix(rows, 7)
    assert out[0, 0] == (1 * pow(2, 5, 7)) % 7
    assert out[0, 1] == 6
    with pytest.raises(BadReduction):
        modp.reduce_matrix([[Fraction(1, 7)]], 7)


def test_modular_rank_prime_pool_skips_bad_primes():
    from fractions import Fraction
    p0 = modp.PRIME_POOL[0]
    rows = [[Fraction(1, p0), 0], [0, 1]]
    # first pool prime divides a denominator; the pool must move on
    assert modp.modular_rank(rows) == 2
    with pytest.raises(BadReduction):
        modp.modular_rank(rows, p=p0)


def test_matmul_mod_p():
    rng = np.random.default_rng(2)
    p = modp.MATMUL_PRIMES[0]
    a = rng.integers(0, p, size=(8, 12), dtype=np.int64)
    b = rng.integers(0, p, size=(12, 5), dtype=np.int64)
    want = np.zeros((8, 5), dtype=np.int64)
    for i in range(8):
        for j in range(5):
            want[i, j] = int(sum(int(a[i, k]) * int(b[k, j])
                                 for k in range(12)) % p)
    assert np.array_equal(modp.matmul_mod_p(a, b, p), want)


def test_panel_cap_bound():
    # the documented exactness bound: cap * (p-1)^2 + p < 2**53
    for p in modp.BLOCK_PRIMES:
        cap = modp._panel_cap(p)
        assert cap * (p - 1) ** 2 + p < 2 ** 53
        assert (cap + 1) * (p - 1) ** 2 + p >= 2 ** 53
        assert cap >= 256
