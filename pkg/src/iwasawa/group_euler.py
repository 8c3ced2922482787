"""Homological rank over G = Gamma x| Delta with Delta = (Z/p)^x.

Modules are given already split into eigenspaces M = sum_j M^(omega^j); each
eigenspace is a Lambda(Gamma)-module.  Delta acts on Gamma through omega^e
(e = 0 is the direct product).  Since #Delta is prime to p,

    H_i(G, M) = H_i(Gamma, M)_Delta,

and taking Delta-coinvariants keeps only the trivial isotypic part.  Delta acts
on H_0(Gamma, M^chi) through chi and on H_1(Gamma, M^chi) through
chi * omega^(-e), so H_0 comes from index 0 and H_1 from index e.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import DomainError, UnsupportedGroupError
from .lambda_modules import (
    ZERO_PROFILE,
    HomologyProfile,
    LambdaModule,
    homology,
    lambda_rank,
)
from .padic_core import PrimeContext


@dataclass(frozen=True)
class GDescriptor:
    ctx: PrimeContext
    action_exponent: int = 0

    def __post_init__(self):
        if not 0 <= self.action_exponent <= self.ctx.p - 2:
            raise DomainError(f"action exponent must lie in [0, {self.ctx.p - 2}], got {self.action_exponent}")

    @property
    def order_delta(self) -> int:
        return self.ctx.p - 1

    @property
    def is_direct(self) -> bool:
        return self.action_exponent == 0


@dataclass(frozen=True)
class EigenModule:
    """Eigenspace components indexed by j in [0, p-2]; absent indices are zero."""

    g: GDescriptor
    components: Mapping[int, LambdaModule] = field(default_factory=dict)

    def __post_init__(self):
        n = self.g.order_delta
        comps = {}
        for j, M in self.components.items():
            if not 0 <= j < n:
                raise DomainError(f"character index {j} outside [0, {n - 1}]")
            if M.ctx != self.g.ctx:
                raise DomainError(f"component {j} is over p={M.ctx.p}, group over p={self.g.ctx.p}")
            comps[int(j)] = M
        object.__setattr__(self, "components", dict(sorted(comps.items())))

    def component(self, j: int) -> LambdaModule | None:
        return self.components.get(j % self.g.order_delta)


def _profile(M: LambdaModule | None) -> HomologyProfile:
    return ZERO_PROFILE if M is None else homology(M)


def g_homology(M: EigenModule) -> HomologyProfile:
    """H_0(G, M) and H_1(G, M); G has p-cohomological dimension 1."""
    return HomologyProfile(
        h0=_profile(M.component(0)).h0,
        h1=_profile(M.component(M.g.action_exponent)).h1,
    )


def hmrank(M: EigenModule) -> int:
    """Homological rank: rank H_0(G, M) - rank H_1(G, M)."""
    h = g_homology(M)
    return h.h0.free_rank - h.h1.free_rank


def gamma_rank(M: EigenModule) -> int:
    """Lambda(Gamma)-rank of M, summed over eigenspaces."""
    return sum(lambda_rank(c) for c in M.components.values())


def twist(M: EigenModule, j: int) -> EigenModule:
    """M tensored with Z_p(omega^j): the component at i moves to i + j."""
    if not M.g.is_direct:
        raise UnsupportedGroupError("twisting is only defined here for the direct product Gamma x Delta")
    n = M.g.order_delta
    return EigenModule(M.g, {(i + j) % n: c for i, c in M.components.items()})


def induce(N: LambdaModule, g: GDescriptor) -> EigenModule:
    """N tensor Z_p[Delta]: a copy of N in every eigenspace."""
    return EigenModule(g, {j: N for j in range(g.order_delta)})


def eigen_direct_sum(M: EigenModule, N: EigenModule) -> EigenModule:
    from .lambda_modules import direct_sum

    if M.g != N.g:
        raise DomainError("eigen-modules over different groups")
    comps = dict(M.components)
    for j, c in N.components.items():
        comps[j] = direct_sum(comps[j], c) if j in comps else c
    return EigenModule(M.g, comps)
