"""Modules over Omega = Lambda / p = F_p[[T]] and elementary Lambda-modules.

Elementary modules are the normal forms of the structure theorem,

    Lambda^r + sum_i Lambda/(p^m_i) + sum_j Lambda/(f_j^k_j),

with every f_j distinguished.  Their invariants are known in closed form,
which makes them the reference against which presentation-based invariants
in :mod:`iwasawa.lambda_modules` are checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError, FormatError, UnsupportedPresentationError
from .lambda_modules import HomologyProfile, LambdaModule, make_module
from .padic_core import (
    ZERO,
    IwasawaElement,
    Matrix,
    PrimeContext,
    ZpModuleShape,
    as_matrix,
    element,
    poly_pow,
    rank_mod_p,
    rank_over_fp_functions,
    reduce_mod,
    valp,
)


@dataclass(frozen=True)
class OmegaModule:
    """coker(A : Omega^relations -> Omega^generators), entries reduced mod p."""

    ctx: PrimeContext
    generators: int
    relations: Matrix
    n_relations: int


def make_omega_module(ctx: PrimeContext | int, b: int, A: Sequence[Sequence] = (), n_relations: int | None = None) -> OmegaModule:
    if isinstance(ctx, int):
        ctx = PrimeContext(ctx)
    rows = list(A)
    if not rows and b:
        rows = [[] for _ in range(b)]
    if len(rows) != b:
        raise FormatError(f"relation matrix has {len(rows)} rows but there are {b} generators")
    canon, a = as_matrix(rows, n_relations)
    canon = tuple(tuple(reduce_mod(f, ctx.p) for f in r) for r in canon)
    return OmegaModule(ctx, b, canon, a)


def omega_rank(N: OmegaModule) -> int:
    """Rank over Omega: generators minus the rank of the relations over F_p(T)."""
    return N.generators - rank_over_fp_functions(N.relations, N.ctx, N.n_relations)


def omega_euler_rank(N: OmegaModule) -> int:
    """dim H_0 - dim H_1 over F_p, from the relation matrix at T = 0."""
    if rank_over_fp_functions(N.relations, N.ctx, N.n_relations) != N.n_relations:
        raise UnsupportedPresentationError("Omega presentation is not injective")
    A0 = [[f[0] if f else 0 for f in r] for r in N.relations]
    r0 = rank_mod_p(A0, N.ctx.p)
    return (N.generators - r0) - (N.n_relations - r0)


def cyclic_annihilated_rank(g: IwasawaElement, ctx: PrimeContext) -> int:
    """Omega-rank of the cyclic module Omega/(g); zero whenever g != 0 mod p."""
    g = reduce_mod(element(g), ctx.p)
    if not g:
        raise DomainError("annihilator is zero mod p; Omega/(0) is free of rank 1")
    return omega_rank(make_omega_module(ctx, 1, [[g]]))


def is_distinguished(f: IwasawaElement, ctx: PrimeContext) -> bool:
    """Monic of positive degree with every lower coefficient divisible by p."""
    f = element(f)
    return len(f) >= 2 and f[-1] == 1 and all(c % ctx.p == 0 for c in f[:-1])


@dataclass(frozen=True)
class ElementaryModule:
    ctx: PrimeContext
    free_rank: int = 0
    p_power_exponents: tuple[int, ...] = ()
    distinguished_parts: tuple[tuple[IwasawaElement, int], ...] = field(default=())

    def __post_init__(self):
        if self.free_rank < 0:
            raise DomainError("free rank must be nonnegative")
        if any(m < 1 for m in self.p_power_exponents):
            raise DomainError("p-power exponents must be positive")
        parts = []
        for f, k in self.distinguished_parts:
            f = element(f)
            if not is_distinguished(f, self.ctx):
                raise DomainError(f"{list(f)} is not a distinguished polynomial for p={self.ctx.p}")
            if k < 1:
                raise DomainError("multiplicities must be positive")
            parts.append((f, int(k)))
        object.__setattr__(self, "p_power_exponents", tuple(self.p_power_exponents))
        object.__setattr__(self, "distinguished_parts", tuple(parts))

    @property
    def is_torsion(self) -> bool:
        return self.free_rank == 0


@dataclass(frozen=True)
class ElementaryInvariants:
    rank: int
    mu: int
    lambda_: int
    homology: HomologyProfile


def elementary_invariants(E: ElementaryModule) -> ElementaryInvariants:
    """Rank, mu, lambda and Gamma-homology of an elementary module in closed form.

    Each Lambda/p^m has the filtration M > pM > ... > p^m M = 0 whose m graded
    pieces are all Omega, so it contributes m to mu.  A summand Lambda/(g) with
    g = f^k distinguished has H_0 = Z_p/g(0) and H_1 = 0 unless g(0) = 0, in
    which case both are Z_p.
    """
    ctx = E.ctx
    h0 = ZpModuleShape(E.free_rank)
    h1 = ZpModuleShape()
    for m in E.p_power_exponents:
        h0 = h0 + ZpModuleShape(0, (m,))
    lam = 0
    for f, k in E.distinguished_parts:
        lam += k * (len(f) - 1)
        c0 = f[0] ** k
        if c0 == 0:
            h0 = h0 + ZpModuleShape(1)
            h1 = h1 + ZpModuleShape(1)
        else:
            h0 = h0 + ZpModuleShape(0, (valp(c0, ctx),))
    return ElementaryInvariants(
        rank=E.free_rank,
        mu=sum(E.p_power_exponents),
        lambda_=lam,
        homology=HomologyProfile(h0, h1),
    )


def to_presentation(E: ElementaryModule) -> LambdaModule:
    """Diagonal presentation: free generators first (zero rows), then p-powers, then f^k."""
    p = E.ctx.p
    diag = [(p**m,) for m in E.p_power_exponents]
    diag += [poly_pow(f, k) for f, k in E.distinguished_parts]
    n = len(diag)
    rows = [[ZERO] * n for _ in range(E.free_rank)]
    for i, d in enumerate(diag):
        rows.append([d if j == i else ZERO for j in range(n)])
    return make_module(E.ctx, E.free_rank + n, rows, n)
