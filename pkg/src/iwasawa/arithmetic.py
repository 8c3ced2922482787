"""Integer formulas for isogeny mu-variation and Selmer growth.

Curve-specific quantities (orders of local points, reduced kernels, numbers
of split multiplicative primes, cyclotomic ranks) are inputs.  Normalised
absolute values are handled through their p-adic exponents only: for a
p-power m, |m|_v = m^(-d_v) at a place above p of local degree d_v, and
|m|_v = m^(d_v) at an archimedean place (d_v = 1 real, 2 complex).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError, HypothesisError
from .padic_core import PrimeContext


class PlaceKind(str, Enum):
    REAL = "real"
    COMPLEX = "complex"

    @property
    def local_degree(self) -> int:
        return 1 if self is PlaceKind.REAL else 2


@dataclass(frozen=True)
class ArchPlaceDatum:
    kind: PlaceKind
    local_points_exponent: int  # ord_p #A(F_v)

    def __post_init__(self):
        object.__setattr__(self, "kind", PlaceKind(self.kind))
        if self.local_points_exponent < 0:
            raise DomainError("local_points_exponent must be nonnegative")


@dataclass(frozen=True)
class PAdicPlaceDatum:
    local_degree: int  # [F_v : Q_p]
    reduced_kernel_exponent: int  # ord_p of the reduced kernel

    def __post_init__(self):
        if self.local_degree < 1:
            raise DomainError("local_degree must be >= 1")
        if self.reduced_kernel_exponent < 0:
            raise DomainError("reduced_kernel_exponent must be nonnegative")


@dataclass(frozen=True)
class IsogenyData:
    ctx: PrimeContext
    global_degree: int
    kernel_exponent: int
    arch_places: tuple[ArchPlaceDatum, ...] = ()
    p_places: tuple[PAdicPlaceDatum, ...] = ()
    assumptions: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "arch_places", tuple(self.arch_places))
        object.__setattr__(self, "p_places", tuple(self.p_places))
        if self.global_degree < 1:
            raise DomainError("global_degree must be >= 1")
        if self.kernel_exponent < 0:
            raise DomainError("kernel_exponent must be nonnegative")
        arch = sum(v.kind.local_degree for v in self.arch_places)
        if arch != self.global_degree:
            raise DomainError(
                f"archimedean places account for degree {arch}, expected {self.global_degree} "
                "(real places count 1, complex places 2)"
            )
        local = sum(v.local_degree for v in self.p_places)
        if local != self.global_degree:
            raise DomainError(f"local degrees of places above p sum to {local}, expected {self.global_degree}")
        for i, v in enumerate(self.arch_places):
            if v.kind is PlaceKind.COMPLEX and v.local_points_exponent != self.kernel_exponent:
                raise DomainError(f"arch_places[{i}]: a complex place sees the whole kernel")
            if v.local_points_exponent > self.kernel_exponent:
                raise DomainError(f"arch_places[{i}]: local points exceed the kernel")
        for i, v in enumerate(self.p_places):
            if v.reduced_kernel_exponent > self.kernel_exponent:
                raise DomainError(f"p_places[{i}]: reduced kernel exceeds the kernel")


def tate_global_exponent(d: IsogenyData) -> int:
    """ord_p of the global Euler characteristic, a product over archimedean places."""
    return sum(v.local_points_exponent - v.kind.local_degree * d.kernel_exponent for v in d.arch_places)


def tate_local_exponent(pd: PAdicPlaceDatum) -> int:
    """ord_p of the local Euler characteristic |#A~_v|_v at a place above p."""
    return -pd.local_degree * pd.reduced_kernel_exponent


def isogeny_mu_delta(d: IsogenyData) -> int:
    """Change of mu-invariant along the isogeny (Coker minus Ker contributions)."""
    if d.ctx.p < 5:
        raise HypothesisError(f"the isogeny formula assumes p >= 5, got p = {d.ctx.p}")
    arch = sum(v.local_points_exponent for v in d.arch_places)
    reduced = sum(v.local_degree * v.reduced_kernel_exponent for v in d.p_places)
    return arch - d.global_degree * d.kernel_exponent + reduced


def mu_over_extension(base: IsogenyData, degree_factor: int, L_data: IsogenyData) -> int:
    """mu_L(E_2) - mu_L(E_1) for a finite extension L of the base field."""
    if degree_factor < 1:
        raise DomainError("degree factor must be positive")
    if L_data.ctx != base.ctx:
        raise DomainError("base and extension data use different primes")
    if L_data.global_degree != base.global_degree * degree_factor:
        raise DomainError(
            f"[L:Q] = {L_data.global_degree} but base degree {base.global_degree} times "
            f"factor {degree_factor} is {base.global_degree * degree_factor}"
        )
    return isogeny_mu_delta(L_data)


def scale_places(d: IsogenyData, k: int) -> IsogenyData:
    """Replace every place by k copies; models a totally split degree-k extension."""
    return IsogenyData(
        d.ctx,
        d.global_degree * k,
        d.kernel_exponent,
        d.arch_places * k,
        d.p_places * k,
        dict(d.assumptions),
    )


def _nonneg(**kw):
    for name, v in kw.items():
        if v < 0:
            raise DomainError(f"{name} must be nonnegative, got {v}")


def theorem_k_hmrank(rank_cyc: int, r: int) -> int:
    """hmrank over Lambda(H) of the Selmer dual: cyclotomic Z_p-rank plus split multiplicative primes."""
    _nonneg(rank_cyc=rank_cyc, r=r)
    return rank_cyc + r


def lambda_growth(ext_degree: int, lambda_cyc: int, r: int, r_L: int) -> int:
    """lambda over L = [L:F^cyc] * (lambda_cyc + r) - r_L."""
    if ext_degree < 1:
        raise DomainError("ext_degree must be positive")
    _nonneg(lambda_cyc=lambda_cyc, r=r, r_L=r_L)
    return ext_degree * (lambda_cyc + r) - r_L


def conductor11_data(L_degree: int = 4) -> IsogenyData:
    """Place data for X_1(11) -> X_0(11) at p = 5 over a field L containing Q(mu_5).

    All archimedean places are complex and see the whole kernel Z/5; the
    kernel injects into the reduction at every prime above 5.
    """
    if L_degree % 4:
        raise DomainError("L must contain Q(mu_5), so [L:Q] is a multiple of 4")
    return IsogenyData(
        PrimeContext(5),
        global_degree=L_degree,
        kernel_exponent=1,
        arch_places=tuple(ArchPlaceDatum(PlaceKind.COMPLEX, 1) for _ in range(L_degree // 2)),
        p_places=tuple(PAdicPlaceDatum(4, 1) for _ in range(L_degree // 4)),
    )
