import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iwasawa import corpus
from iwasawa.errors import DomainError, UnsupportedGroupError
from iwasawa.group_euler import (
    EigenModule,
    GDescriptor,
    eigen_direct_sum,
    g_homology,
    gamma_rank,
    hmrank,
    induce,
    twist,
)
from iwasawa.lambda_modules import cyclic_module, euler_rank, free_module, lambda_rank, make_module
from iwasawa.padic_core import T, PrimeContext, ZpModuleShape

P5 = PrimeContext(5)
G0 = GDescriptor(P5, 0)
G1 = GDescriptor(P5, 1)


def zp():
    return make_module(P5, 1, [[T]])


def test_descriptor_range():
    GDescriptor(P5, 3)
    with pytest.raises(DomainError):
        GDescriptor(P5, 4)
    with pytest.raises(DomainError):
        GDescriptor(P5, -1)


def test_component_index_range():
    with pytest.raises(DomainError):
        EigenModule(G0, {4: zp()})
    with pytest.raises(DomainError):
        EigenModule(G0, {0: free_module(3, 1)})


def test_g_homology_trivial_zp():
    h = g_homology(EigenModule(G0, {0: zp()}))
    assert h.h0 == ZpModuleShape(1) and h.h1 == ZpModuleShape(1)


def test_zp_omega_semidirect():
    M = EigenModule(G1, {1: zp()})
    h = g_homology(M)
    assert h.h0 == ZpModuleShape() and h.h1 == ZpModuleShape(1)
    assert hmrank(M) == -1


def test_free_eigenspace_examples():
    # Lambda(G)^chi for a nontrivial chi: no coinvariants, no H_1
    M = EigenModule(G0, {1: free_module(P5, 1)})
    assert hmrank(M) == 0 and gamma_rank(M) == 1
    assert hmrank(EigenModule(G0, {0: free_module(P5, 1)})) == 1


def test_hmrank_examples():
    assert hmrank(EigenModule(G0, {0: zp()})) == 0
    assert hmrank(EigenModule(G0, {2: zp()})) == 0
    assert hmrank(EigenModule(G0)) == 0


def test_gamma_rank_sums_components():
    M = EigenModule(G0, {0: free_module(P5, 2), 3: zp(), 1: free_module(P5, 1)})
    assert gamma_rank(M) == 3


def test_twist_moves_components():
    M = twist(EigenModule(G0, {0: free_module(P5, 1)}), 1)
    assert list(M.components) == [1]
    assert hmrank(twist(EigenModule(G0, {3: free_module(P5, 1)}), 1)) == 1


def test_twist_semidirect_unsupported():
    with pytest.raises(UnsupportedGroupError):
        twist(EigenModule(G1, {1: zp()}), 1)


def test_induce_examples():
    M = induce(free_module(P5, 2), G0)
    assert len(M.components) == 4 and hmrank(M) == 2
    assert hmrank(induce(cyclic_module(P5, 5), G0)) == 0
    assert hmrank(induce(zp(), G1)) == 0


def test_eigen_direct_sum_group_mismatch():
    with pytest.raises(DomainError):
        eigen_direct_sum(EigenModule(G0), EigenModule(G1))


seeds = st.integers(0, 10**6)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 3))
def test_shapiro(seed, e):
    N = corpus.random_presentation(random.Random(seed), 5, 4)
    assert hmrank(induce(N, GDescriptor(P5, e))) == lambda_rank(N)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 3))
def test_twist_identity(seed, j):
    M = corpus.random_eigen(random.Random(seed), 5, e=0)
    inv = M.component(-j)
    assert hmrank(twist(M, j)) == (0 if inv is None else lambda_rank(inv))


@settings(max_examples=60, deadline=None)
@given(seeds, seeds)
def test_hmrank_additive(s1, s2):
    rng = random.Random(s1)
    e = rng.randint(0, 3)
    M = corpus.random_eigen(rng, 5, e=e)
    N = corpus.random_eigen(random.Random(s2), 5, e=e)
    assert hmrank(eigen_direct_sum(M, N)) == hmrank(M) + hmrank(N)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_direct_product_reduces_to_trivial_eigenspace(seed):
    M = corpus.random_eigen(random.Random(seed), 7, e=0)
    c = M.component(0)
    assert hmrank(M) == (0 if c is None else euler_rank(c))
