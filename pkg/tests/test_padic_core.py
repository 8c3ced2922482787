import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import int_matrices, matrices, polys
from iwasawa.errors import DomainError, FormatError
from iwasawa.padic_core import (
    T,
    PrimeContext,
    ZpModuleShape,
    content_valuation,
    determinant,
    poly_exact_div,
    poly_mul,
    rank_mod_p,
    rank_over_fp_functions,
    rank_over_rational_functions,
    rank_over_rationals,
    snf_p_local,
    valp,
    weierstrass_prepare,
)
from oracles import det_leibniz, p_local_shape, rank_by_evaluation, rank_by_minors, rank_q

P5 = PrimeContext(5)


@pytest.mark.parametrize("p", [3, 5, 7, 101])
def test_prime_context_accepts_odd_primes(p):
    assert PrimeContext(p).p == p


@pytest.mark.parametrize("p", [2, 1, 0, -3, 9, 15])
def test_prime_context_rejects(p):
    with pytest.raises(DomainError):
        PrimeContext(p)


@pytest.mark.parametrize("n, expected", [(5, 1), (3, 0), (50, 2), (-125, 3)])
def test_valp(n, expected):
    assert valp(n, P5) == expected


def test_valp_zero():
    with pytest.raises(DomainError):
        valp(0, P5)


def test_content_valuation():
    assert content_valuation((25, 5), P5) == 1
    assert content_valuation((3,), P5) == 0
    assert content_valuation((), P5) == math.inf


def test_weierstrass_examples():
    w = weierstrass_prepare((3,), P5)
    assert (w.mu, w.lambda_, w.is_unit) == (0, 0, True)
    w = weierstrass_prepare((25, 5), P5)
    assert (w.mu, w.lambda_, w.is_unit) == (1, 1, False)
    w = weierstrass_prepare((5, 0, 1), P5)
    assert (w.mu, w.lambda_) == (0, 2)


def test_weierstrass_zero():
    with pytest.raises(DomainError):
        weierstrass_prepare((), P5)


@given(polys(4, 200, nonzero=True), polys(4, 200, nonzero=True), st.sampled_from([3, 5, 7]))
def test_weierstrass_multiplicative(f, g, p):
    ctx = PrimeContext(p)
    a, b = weierstrass_prepare(f, ctx), weierstrass_prepare(g, ctx)
    c = weierstrass_prepare(poly_mul(f, g), ctx)
    assert c.mu == a.mu + b.mu
    assert c.lambda_ == a.lambda_ + b.lambda_


def test_rank_examples():
    assert rank_over_rational_functions([[T]]) == 1
    assert rank_over_rational_functions([[T, (5,)], [(), ()]]) == 1
    assert rank_over_rational_functions([[], []]) == 0


def test_rank_fp_examples():
    assert rank_over_fp_functions([[(5,)]], P5) == 0
    assert rank_over_fp_functions([[(5, 1)]], P5) == 1
    assert rank_over_fp_functions([[1, 0], [0, 1]], P5) == 2


def test_ragged_matrix():
    with pytest.raises(FormatError):
        rank_over_rational_functions([[T], [T, T]])


def test_rank_of_singular_polynomial_matrix():
    # second row is (1+T) times the first
    A = [[(1, 2), (0, 0, 3)], [(1, 3, 2), (0, 0, 3, 3)], [(4,), (1,)]]
    assert rank_over_rational_functions(A) == 2
    assert rank_over_rational_functions(A[:2]) == 1


@settings(max_examples=150, deadline=None)
@given(matrices(4, 4, 3, 12))
def test_rank_matches_evaluation_oracle(A):
    assert rank_over_rational_functions(A) == rank_by_evaluation(A)


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3, 2, 12), st.sampled_from([3, 5, 7]))
def test_rank_fp_matches_minor_oracle(A, p):
    assert rank_over_fp_functions(A, PrimeContext(p)) == rank_by_minors(A, mod=p)


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3, 2, 12))
def test_rank_invariant_under_permutation_and_row_scaling(A):
    r = rank_over_rational_functions(A)
    assert rank_over_rational_functions(A[::-1]) == r
    assert rank_over_rational_functions([row[::-1] for row in A]) == r
    scaled = [[poly_mul((2, 0, 1), f) for f in A[0]]] + A[1:]
    assert rank_over_rational_functions(scaled) == r


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(polys(2, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_leibniz(A):
    assert determinant(A) == det_leibniz(A)


def test_exact_division_rejects_remainder():
    with pytest.raises(ArithmeticError):
        poly_exact_div((1, 0, 1), (1, 1))


@settings(max_examples=100, deadline=None)
@given(int_matrices(4, 4, 50), st.sampled_from([3, 5]))
def test_integer_ranks_match_oracle(B, p):
    assert rank_over_rationals(B) == rank_q(B)
    assert rank_mod_p(B, p) == rank_by_minors([[(x,) if x else () for x in r] for r in B], mod=p)


def test_snf_examples():
    assert snf_p_local([[0]], P5) == ZpModuleShape(1, ())
    assert snf_p_local([[5]], P5) == ZpModuleShape(0, (1,))
    assert snf_p_local([[3]], P5) == ZpModuleShape(0, ())


def test_snf_no_columns():
    assert snf_p_local([[], []], P5) == ZpModuleShape(2)
    assert snf_p_local([], P5, nrows=3) == ZpModuleShape(3)


@settings(max_examples=150, deadline=None)
@given(int_matrices(3, 3, 200), st.sampled_from([3, 5]))
def test_snf_matches_determinantal_divisors(B, p):
    free, exps = p_local_shape(B, p, len(B))
    assert snf_p_local(B, PrimeContext(p)) == ZpModuleShape(free, exps)


@settings(max_examples=80, deadline=None)
@given(int_matrices(3, 3, 100), int_matrices(3, 3, 100))
def test_snf_block_diagonal(B, C):
    z1 = [[0] * len(C[0]) for _ in B]
    z2 = [[0] * len(B[0]) for _ in C]
    block = [r + z for r, z in zip(B, z1)] + [z + r for z, r in zip(z2, C)]
    assert snf_p_local(block, P5) == snf_p_local(B, P5) + snf_p_local(C, P5)


@settings(max_examples=80, deadline=None)
@given(int_matrices(3, 3, 100), st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-7, 7)), max_size=6))
def test_snf_unimodular_invariance(B, ops):
    n = len(B)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, j, c in ops:
        i, j = i % n, j % n
        if i != j:
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    UB = [[sum(U[i][k] * B[k][j] for k in range(n)) for j in range(len(B[0]))] for i in range(n)]
    assert snf_p_local(UB, P5) == snf_p_local(B, P5)


def test_shape_sorted_and_printed():
    s = ZpModuleShape(1, (1, 3))
    assert s.torsion_exponents == (3, 1)
    assert str(s) == "Z_p + Z/p^3 + Z/p"
    assert str(ZpModuleShape()) == "0"
