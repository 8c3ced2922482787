import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iwasawa import corpus
from iwasawa.errors import DomainError, FormatError, NotTorsionError, UnsupportedPresentationError
from iwasawa.lambda_modules import (
    char_invariants,
    cyclic_module,
    direct_sum,
    euler_char_order_exponent,
    euler_rank,
    extension,
    free_module,
    has_short_resolution,
    homology,
    lambda_rank,
    make_module,
    mod_p_reduction,
    p_torsion_rank,
    restrict_to_subgroup,
)
from iwasawa.omega_modules import omega_rank
from iwasawa.padic_core import T, PrimeContext, ZpModuleShape, poly_pow
from oracles import rank_by_evaluation

P = 5


def test_make_module_examples():
    M = make_module(P, 1, [[T]])
    assert (M.generators, M.n_relations) == (1, 1)
    F = make_module(P, 2)
    assert (F.generators, F.n_relations) == (2, 0)
    N = make_module(P, 1, [[T, 5]])
    assert N.relations == ((T, (5,)),)


def test_make_module_dimension_mismatch():
    with pytest.raises(FormatError):
        make_module(P, 2, [[T]])
    with pytest.raises(FormatError):
        make_module(P, 1, [[T]], n_relations=2)


def test_lambda_rank_examples():
    assert lambda_rank(free_module(P, 2)) == 2
    assert lambda_rank(cyclic_module(P, T)) == 0
    assert lambda_rank(make_module(P, 2, [[T], [5]])) == 1


def test_short_resolution_examples():
    assert has_short_resolution(cyclic_module(P, T))
    assert not has_short_resolution(make_module(P, 1, [[T, T]]))
    assert has_short_resolution(free_module(P, 2))


def test_homology_examples():
    h = homology(cyclic_module(P, T))
    assert h.h0 == ZpModuleShape(1) and h.h1 == ZpModuleShape(1)
    h = homology(cyclic_module(P, 5))
    assert h.h0 == ZpModuleShape(0, (1,)) and h.h1 == ZpModuleShape()
    h = homology(free_module(P, 1))
    assert h.h0 == ZpModuleShape(1) and h.h1 == ZpModuleShape()


def test_homology_rejects_non_injective():
    with pytest.raises(UnsupportedPresentationError):
        homology(make_module(P, 1, [[T, T]]))


def test_euler_rank_examples():
    assert euler_rank(cyclic_module(P, T)) == 0
    assert euler_rank(free_module(P, 2)) == 2
    assert euler_rank(cyclic_module(P, 5)) == 0


def test_euler_char_order_exponent_examples():
    assert euler_char_order_exponent(cyclic_module(P, 5)) == 1
    assert euler_char_order_exponent(cyclic_module(P, T)) == math.inf
    assert euler_char_order_exponent(cyclic_module(P, (-5, 1))) == 1


def test_char_invariants_examples():
    w = char_invariants(make_module(P, 2, [[5, 0], [0, 5]]))
    assert (w.mu, w.lambda_) == (2, 0)
    w = char_invariants(cyclic_module(P, T))
    assert (w.mu, w.lambda_) == (0, 1)
    w = char_invariants(make_module(P, 2, [[5, 0], [0, (5, 0, 1)]]))
    assert (w.mu, w.lambda_) == (1, 2)


def test_char_invariants_errors():
    with pytest.raises(UnsupportedPresentationError):
        char_invariants(make_module(P, 2, [[T], [5]]))
    with pytest.raises(NotTorsionError):
        char_invariants(make_module(P, 2, [[T, T], [5, 5]]))


def test_restrict_examples():
    R = restrict_to_subgroup(free_module(P, 1), 1)
    assert R.generators == 5 and lambda_rank(R) == 5
    R = restrict_to_subgroup(cyclic_module(P, T), 1)
    assert R.generators == 5 and lambda_rank(R) == 0
    assert lambda_rank(restrict_to_subgroup(free_module(P, 2), 1)) == 10


def test_restrict_rewrites_t_power():
    # T * T^4 = T^5 = S - 5T - 10T^2 - 10T^3 - 5T^4 when S = (1+T)^5 - 1
    R = restrict_to_subgroup(cyclic_module(P, T), 1)
    assert [R.relations[i][4] for i in range(5)] == [(0, 1), (-5,), (-10,), (-10,), (-5,)]


def test_restrict_rejects_k0():
    with pytest.raises(DomainError):
        restrict_to_subgroup(free_module(P, 1), 0)


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (5, 1)])
def test_restrict_rank_against_evaluation_oracle(p, k):
    rng = random.Random(f"restrict:{p}:{k}")
    for _ in range(4):
        M = corpus.random_presentation(rng, p, 2)
        R = restrict_to_subgroup(M, k)
        assert R.generators - rank_by_evaluation(R.relations) == p**k * lambda_rank(M)


def test_direct_sum_examples():
    assert lambda_rank(direct_sum(free_module(P, 1), cyclic_module(P, T))) == 1
    assert char_invariants(direct_sum(cyclic_module(P, 5), cyclic_module(P, 5))).mu == 2
    assert lambda_rank(direct_sum(free_module(P, 1), free_module(P, 1))) == 2


def test_direct_sum_prime_mismatch():
    with pytest.raises(DomainError):
        direct_sum(free_module(3, 1), free_module(5, 1))


def test_mod_p_reduction_examples():
    N = mod_p_reduction(cyclic_module(P, 5))
    assert N.relations == (((),),) and omega_rank(N) == 1
    N = mod_p_reduction(cyclic_module(P, T))
    assert N.relations == ((T,),) and omega_rank(N) == 0
    assert omega_rank(mod_p_reduction(free_module(P, 1))) == 1


def test_p_torsion_rank_examples():
    assert p_torsion_rank(cyclic_module(P, 5)) == 1
    assert p_torsion_rank(free_module(P, 1)) == 0
    assert p_torsion_rank(cyclic_module(P, T)) == 0


def test_extension_is_torsion_with_additive_mu():
    A = cyclic_module(P, 25)
    C = cyclic_module(P, (5, 1))
    B = extension(A, C, [[(1, 1)]])
    w = char_invariants(B)
    assert (w.mu, w.lambda_) == (2, 1)


seeds = st.integers(0, 10**6)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_euler_rank_matches_rank(seed):
    M = corpus.random_presentation(random.Random(seed), 5)
    assert euler_rank(M) == lambda_rank(M)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_finite_h0_forces_torsion(seed):
    M = corpus.random_presentation(random.Random(seed), 3, square=True)
    h = homology(M)
    if h.h0.is_finite:
        assert lambda_rank(M) == 0
        assert h.h1.is_finite
    if lambda_rank(M) == 0:
        assert euler_rank(M) == 0


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_mod_p_rank_identity(seed):
    M = corpus.random_presentation(random.Random(seed), 7)
    assert omega_rank(mod_p_reduction(M)) == p_torsion_rank(M) + lambda_rank(M)


@settings(max_examples=40, deadline=None)
@given(seeds, seeds)
def test_char_invariants_additive_over_sums(s1, s2):
    M = corpus.random_presentation(random.Random(s1), 5, 3, square=True)
    N = corpus.random_presentation(random.Random(s2), 5, 3, square=True)
    if lambda_rank(M) or lambda_rank(N):
        return
    a, b, c = char_invariants(M), char_invariants(N), char_invariants(direct_sum(M, N))
    assert (c.mu, c.lambda_) == (a.mu + b.mu, a.lambda_ + b.lambda_)


def test_p_power_cyclic_chi():
    for m in range(1, 5):
        assert euler_char_order_exponent(cyclic_module(P, 5**m)) == m
    # Lambda/(T-p)^2: H_0 = Z/p^2
    assert euler_char_order_exponent(cyclic_module(P, poly_pow((-5, 1), 2))) == 2


def test_generated_presentations_stay_in_box():
    rng = random.Random(0)
    for _ in range(50):
        p = rng.choice([3, 5, 7])
        M = corpus.random_presentation(rng, p)
        assert M.generators <= 6 and M.n_relations <= M.generators
        for row in M.relations:
            for f in row:
                assert len(f) - 1 <= 8
                assert all(abs(c) <= p**6 for c in f)


def test_prime_context_shared():
    M = make_module(PrimeContext(7), 1, [[7]])
    assert M.ctx.p == 7
