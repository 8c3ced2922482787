"""Finitely presented modules over Lambda = Z_p[[T]].

A module is the cokernel of a relation matrix A : Lambda^a -> Lambda^b.
Relations are the *columns* of A; generators index its rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import DomainError, FormatError, NotTorsionError, UnsupportedPresentationError
from .padic_core import (
    ONE,
    ZERO,
    IwasawaElement,
    Matrix,
    PrimeContext,
    WeierstrassData,
    ZpModuleShape,
    as_matrix,
    determinant,
    rank_over_fp_functions,
    rank_over_rational_functions,
    rank_over_rationals,
    reduce_mod,
    snf_p_local,
    specialize_at_zero,
    weierstrass_prepare,
)


@dataclass(frozen=True)
class LambdaModule:
    """coker(A : Lambda^relations -> Lambda^generators)."""

    ctx: PrimeContext
    generators: int
    relations: Matrix
    n_relations: int

    def column(self, j: int) -> tuple[IwasawaElement, ...]:
        return tuple(row[j] for row in self.relations)

    def __str__(self) -> str:
        return f"LambdaModule(p={self.ctx.p}, generators={self.generators}, relations={self.n_relations})"


def make_module(ctx: PrimeContext | int, b: int, A: Sequence[Sequence] = (), n_relations: int | None = None) -> LambdaModule:
    """Validated module with ``b`` generators and relation matrix ``A`` (b rows).

    An empty ``A`` gives the free module Lambda^b.  Entries may be ints or
    ascending coefficient sequences.
    """
    if isinstance(ctx, int):
        ctx = PrimeContext(ctx)
    if b < 0:
        raise FormatError("generator count must be nonnegative")
    rows = list(A)
    if not rows and b:
        rows = [[] for _ in range(b)]
    if len(rows) != b:
        raise FormatError(f"relation matrix has {len(rows)} rows but there are {b} generators")
    canon, a = as_matrix(rows, n_relations)
    return LambdaModule(ctx, b, canon, a)


def free_module(ctx: PrimeContext | int, b: int) -> LambdaModule:
    return make_module(ctx, b)


def cyclic_module(ctx: PrimeContext | int, f) -> LambdaModule:
    """Lambda / (f)."""
    return make_module(ctx, 1, [[f]])


def lambda_rank(M: LambdaModule) -> int:
    """Rank over Lambda, i.e. generators minus the rank of A over Q(T)."""
    return M.generators - rank_over_rational_functions(M.relations, M.n_relations)


def is_torsion(M: LambdaModule) -> bool:
    return lambda_rank(M) == 0


def has_short_resolution(M: LambdaModule) -> bool:
    """True when 0 -> Lambda^a -> Lambda^b -> M -> 0 is exact (A injective)."""
    return rank_over_rational_functions(M.relations, M.n_relations) == M.n_relations


def _require_injective(M: LambdaModule) -> None:
    if not has_short_resolution(M):
        raise UnsupportedPresentationError(
            "relation matrix is not injective; drop dependent relations to obtain "
            "a presentation 0 -> Lambda^a -> Lambda^b -> M -> 0"
        )


@dataclass(frozen=True)
class HomologyProfile:
    """H_0 and H_1 of Gamma with coefficients in a module; higher groups vanish."""

    h0: ZpModuleShape
    h1: ZpModuleShape


ZERO_PROFILE = HomologyProfile(ZpModuleShape(), ZpModuleShape())


def homology(M: LambdaModule) -> HomologyProfile:
    """H_0 = coker A(0) and H_1 = ker A(0), as Z_p-modules.

    Kernels of integer matrices are saturated sublattices, hence free
    p-locally, so H_1 carries no torsion.
    """
    _require_injective(M)
    A0 = specialize_at_zero(M.relations)
    r0 = rank_over_rationals(A0)
    h0 = snf_p_local(A0, M.ctx, nrows=M.generators)
    h1 = ZpModuleShape(M.n_relations - r0)
    return HomologyProfile(h0, h1)


def euler_rank(M: LambdaModule) -> int:
    """Alternating sum of the Z_p-ranks of the homology groups."""
    h = homology(M)
    return h.h0.free_rank - h.h1.free_rank


def euler_char_order_exponent(M: LambdaModule) -> int | float:
    """ord_p of chi(Gamma, M) when both homology groups are finite, else ``math.inf``."""
    h = homology(M)
    if not (h.h0.is_finite and h.h1.is_finite):
        return math.inf
    return h.h0.order_exponent - h.h1.order_exponent


def char_invariants(M: LambdaModule) -> WeierstrassData:
    """mu and lambda of the characteristic power series det(A).

    Needs a square presentation; det(A) = 0 means the module is not torsion.
    """
    if M.generators != M.n_relations:
        raise UnsupportedPresentationError(
            f"characteristic invariants need a square presentation, got "
            f"{M.generators} generators and {M.n_relations} relations"
        )
    d = determinant(M.relations) if M.generators else ONE
    if not d:
        raise NotTorsionError("det of the relation matrix is zero; the module is not torsion")
    return weierstrass_prepare(d, M.ctx)


def direct_sum(M: LambdaModule, N: LambdaModule) -> LambdaModule:
    """Block-diagonal presentation of M + N."""
    if M.ctx != N.ctx:
        raise DomainError(f"cannot add modules over different primes ({M.ctx.p} and {N.ctx.p})")
    rows = [list(r) + [ZERO] * N.n_relations for r in M.relations]
    rows += [[ZERO] * M.n_relations + list(r) for r in N.relations]
    return make_module(M.ctx, M.generators + N.generators, rows, M.n_relations + N.n_relations)


def extension(A: LambdaModule, C: LambdaModule, coupling: Sequence[Sequence] | None = None) -> LambdaModule:
    """Module B with relation matrix [[A, X], [0, C]].

    The generators of A span a copy of A inside B with quotient C, provided
    C's presentation is injective.  X defaults to zero (the split case).
    """
    if A.ctx != C.ctx:
        raise DomainError("extension of modules over different primes")
    if coupling is None:
        coupling = [[ZERO] * C.n_relations for _ in range(A.generators)]
    X, xc = as_matrix(coupling, C.n_relations)
    if len(X) != A.generators or xc != C.n_relations:
        raise FormatError("coupling block must be (A generators) x (C relations)")
    rows = [list(A.relations[i]) + list(X[i]) for i in range(A.generators)]
    rows += [[ZERO] * A.n_relations + list(r) for r in C.relations]
    return make_module(A.ctx, A.generators + C.generators, rows, A.n_relations + C.n_relations)


def _subgroup_basis_coordinates(f: IwasawaElement, q: int, j: int) -> list[IwasawaElement]:
    """Coordinates of f * T^j on the basis 1, T, ..., T^(q-1) over Z[S].

    S = (1+T)^q - 1, so T^q = (1 + S) - sum_{i<q} C(q, i) T^i.
    """
    coeffs: list = [ZERO] * j + [(c,) if c else ZERO for c in f]
    binoms = [comb(q, i) for i in range(q)]
    for n in range(len(coeffs) - 1, q - 1, -1):
        c = coeffs[n]
        if not c:
            continue
        coeffs[n] = ZERO
        base = n - q
        # c * (1 + S) lands on T^base
        shifted = (0,) + c
        one_plus_s = [0] * max(len(c), len(shifted))
        for i, x in enumerate(c):
            one_plus_s[i] += x
        for i, x in enumerate(shifted):
            one_plus_s[i] += x
        coeffs[base] = _add(coeffs[base], tuple(one_plus_s))
        for i in range(q):
            if binoms[i]:
                coeffs[base + i] = _add(coeffs[base + i], tuple(-binoms[i] * x for x in c))
    coeffs += [ZERO] * (q - len(coeffs))
    return coeffs[:q]


def _add(f, g):
    if len(f) < len(g):
        f, g = g, f
    c = list(f)
    for i, x in enumerate(g):
        c[i] += x
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def restrict_to_subgroup(M: LambdaModule, k: int) -> LambdaModule:
    """M viewed as a module over Lambda(Gamma^(p^k)) = Z_p[[S]].

    Lambda is free over the subalgebra on 1, T, ..., T^(q-1) with q = p^k, so
    each generator splits into q generators and each relation c into the q
    relations T^j * c.  Entries of the result are polynomials in S.
    """
    if k < 1:
        raise DomainError("subgroup index exponent k must be >= 1")
    q = M.ctx.p ** k
    b, a = M.generators, M.n_relations
    rows = [[ZERO] * (q * a) for _ in range(q * b)]
    for r in range(b):
        for c in range(a):
            f = M.relations[r][c]
            if not f:
                continue
            for j in range(q):
                coords = _subgroup_basis_coordinates(f, q, j)
                for i, x in enumerate(coords):
                    rows[r * q + i][c * q + j] = x
    return make_module(M.ctx, q * b, rows, q * a)


def mod_p_reduction(M: LambdaModule):
    """M / pM as a module over Omega = F_p[[T]]."""
    from .omega_modules import make_omega_module

    rows = [[reduce_mod(f, M.ctx.p) for f in r] for r in M.relations]
    return make_omega_module(M.ctx, M.generators, rows, M.n_relations)


def p_torsion_rank(M: LambdaModule) -> int:
    """Omega-rank of M[p].

    Tensoring the resolution with Omega identifies M[p] = Tor_1(M, Omega) with
    the kernel of A mod p, whose rank is a - rank_{F_p(T)}(A mod p).
    """
    _require_injective(M)
    return M.n_relations - rank_over_fp_functions(M.relations, M.ctx, M.n_relations)
