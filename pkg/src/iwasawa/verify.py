"""Randomised two-path checks of the module-theoretic identities.

Each :class:`Identity` draws instances from a seeded generator and checks an
equality between two independently computed quantities.  Reports are
deterministic in (suite, seed, count): the generator is seeded from the
string ``"<name>:<seed>"`` and no timing data is recorded.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Any, Callable

from . import corpus
from .arithmetic import (
    isogeny_mu_delta,
    scale_places,
    tate_global_exponent,
    tate_local_exponent,
)
from .documents import to_obj
from .group_euler import (
    EigenModule,
    GDescriptor,
    eigen_direct_sum,
    hmrank,
    induce,
    twist,
)
from .lambda_modules import (
    char_invariants,
    direct_sum,
    euler_char_order_exponent,
    euler_rank,
    extension,
    homology,
    lambda_rank,
    make_module,
    mod_p_reduction,
    p_torsion_rank,
    restrict_to_subgroup,
)
from .omega_modules import (
    elementary_invariants,
    omega_euler_rank,
    omega_rank,
    to_presentation,
)
from .padic_core import PrimeContext, poly_mul, rank_over_fp_functions, weierstrass_prepare


@dataclass(frozen=True)
class Identity:
    name: str
    description: str
    generate: Callable[[random.Random], Any]
    check: Callable[[Any], bool]
    applies: Callable[[Any], bool] = lambda inst: True
    document: Callable[[Any], Any] = lambda inst: to_obj(inst)


@dataclass
class VerificationReport:
    identity: str
    instances: int
    checked: int
    passed: bool
    counterexample: Any = None
    error: str | None = None

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "instances": self.instances,
            "checked": self.checked,
            "passed": self.passed,
            "counterexample": self.counterexample,
            "error": self.error,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status}  {self.identity:<24} instances={self.instances} checked={self.checked}"
        if self.error:
            out += f"  error: {self.error}"
        return out


def run_identity(identity: Identity, seed: int, count: int) -> VerificationReport:
    """Check ``count`` generated instances, stopping at the first failure."""
    rng = random.Random(f"{identity.name}:{seed}")
    checked = 0
    for i in range(count):
        inst = identity.generate(rng)
        if not identity.applies(inst):
            continue
        checked += 1
        try:
            ok = identity.check(inst)
            err = None
        except Exception as exc:  # a crash is a failure with a counterexample
            ok, err = False, f"{type(exc).__name__}: {exc}"
        if not ok:
            return VerificationReport(identity.name, i + 1, checked, False, identity.document(inst), err)
    return VerificationReport(identity.name, count, checked, True)


# ---------------------------------------------------------------------------
# instance generators


def _lambda_corpus(rng):
    return corpus.random_presentation(rng, rng.choice([3, 5, 7]))


def _restriction_instance(rng):
    p = rng.choice([3, 5])
    k = rng.choice([1, 2])
    # p^k * generators stays <= 150 rows
    max_dim = 6 if p**k <= 9 else 3 if p**k <= 25 else 1
    return corpus.random_presentation(rng, p, max_dim), k


def _torsion_extension(rng):
    p = rng.choice([3, 5, 7])
    A = corpus.random_elementary(rng, p, torsion=True)
    C = corpus.random_elementary(rng, p, torsion=True)
    PA, PC = to_presentation(A), to_presentation(C)
    X = [[corpus.random_poly(rng, rng.randint(0, 2), p) for _ in range(PC.n_relations)] for _ in range(PA.generators)]
    B = extension(PA, PC, X)
    rows = corpus.scramble(rng, [list(r) for r in B.relations], p, steps=2 * B.generators)
    return A, C, make_module(p, B.generators, rows, B.n_relations)


def _eigen_instance(rng, e=None):
    return corpus.random_eigen(rng, rng.choice([3, 5, 7]), e)


def _shapiro_instance(rng):
    p = rng.choice([3, 5, 7])
    N = corpus.random_presentation(rng, p, 4)
    return N, GDescriptor(PrimeContext(p), rng.randrange(p - 1))


def _twist_instance(rng):
    M = _eigen_instance(rng, e=0)
    return M, rng.randrange(M.g.order_delta)


def _weierstrass_pair(rng):
    p = rng.choice([3, 5, 7])

    def nonzero():
        f = ()
        while not f:
            f = corpus.random_poly(rng, rng.randint(0, 5), p**3)
        return f

    return PrimeContext(p), nonzero(), nonzero()


# ---------------------------------------------------------------------------
# checks


def _nakayama(M):
    h = homology(M)
    return lambda_rank(M) == 0 and h.h1.is_finite


def _mu_oracle(E):
    inv = elementary_invariants(E)
    P = to_presentation(E)
    if lambda_rank(P) != inv.rank:
        return False
    if homology(P) != inv.homology:
        return False
    if E.is_torsion:
        w = char_invariants(P)
        return (w.mu, w.lambda_) == (inv.mu, inv.lambda_)
    return True


def _extension_additive(inst):
    A, C, B = inst
    w = char_invariants(B)
    ia, ic = elementary_invariants(A), elementary_invariants(C)
    return w.mu == ia.mu + ic.mu and w.lambda_ == ia.lambda_ + ic.lambda_


def _mu_equals_chi(E):
    return elementary_invariants(E).mu == euler_char_order_exponent(to_presentation(E))


def _omega_euler(M):
    N = mod_p_reduction(M)
    return omega_rank(N) == omega_euler_rank(N)


def _omega_injective(M):
    return rank_over_fp_functions(M.relations, M.ctx, M.n_relations) == M.n_relations


def _weierstrass_mult(inst):
    ctx, f, g = inst
    a, b, c = weierstrass_prepare(f, ctx), weierstrass_prepare(g, ctx), weierstrass_prepare(poly_mul(f, g), ctx)
    return c.mu == a.mu + b.mu and c.lambda_ == a.lambda_ + b.lambda_


def _char_sum(inst):
    M, N = inst
    a, b, c = char_invariants(M), char_invariants(N), char_invariants(direct_sum(M, N))
    return c.mu == a.mu + b.mu and c.lambda_ == a.lambda_ + b.lambda_


def _char_sum_instance(rng):
    p = rng.choice([3, 5, 7])
    return corpus.random_presentation(rng, p, 3, square=True), corpus.random_presentation(rng, p, 3, square=True)


def _sum_pair_instance(rng):
    p = rng.choice([3, 5, 7])
    e = rng.randrange(p - 1)
    return corpus.random_eigen(rng, p, e), corpus.random_eigen(rng, p, e)


def _direct_product(M: EigenModule):
    c = M.component(0)
    return hmrank(M) == (euler_rank(c) if c is not None else 0)


def _pair_doc(inst):
    return {"first": to_obj(inst[0]), "second": to_obj(inst[1])}


def _eq402(d):
    return isogeny_mu_delta(d) == tate_global_exponent(d) - sum(tate_local_exponent(v) for v in d.p_places)


def _linearity_instance(rng):
    return corpus.random_isogeny_data(rng), rng.randint(1, 5)


IDENTITIES: dict[str, Identity] = {}


def _register(*items: Identity) -> None:
    for it in items:
        IDENTITIES[it.name] = it


_register(
    Identity("theorem-a", "Lambda-rank equals the homology Euler characteristic",
             _lambda_corpus, lambda M: euler_rank(M) == lambda_rank(M)),
    Identity("nakayama", "finite H_0 forces torsion and finite H_1",
             _lambda_corpus, _nakayama, applies=lambda M: homology(M).h0.is_finite),
    Identity("finite-homology-torsion", "finite H_0 and H_1 force torsion",
             _lambda_corpus, lambda M: lambda_rank(M) == 0,
             applies=lambda M: homology(M).h0.is_finite and homology(M).h1.is_finite),
    Identity("torsion-euler-zero", "torsion modules have vanishing Euler rank",
             _lambda_corpus, lambda M: euler_rank(M) == 0, applies=lambda M: lambda_rank(M) == 0),
    Identity("eq-300", "rank_Omega(M/p) = rank_Omega(M[p]) + rank_Lambda(M)",
             _lambda_corpus,
             lambda M: omega_rank(mod_p_reduction(M)) == p_torsion_rank(M) + lambda_rank(M)),
    Identity("omega-euler", "Omega-rank equals the mod-p homology Euler characteristic",
             _lambda_corpus, _omega_euler, applies=_omega_injective,
             document=lambda M: to_obj(mod_p_reduction(M))),
    Identity("restriction", "rank over Lambda(Gamma^(p^k)) is p^k times the rank",
             _restriction_instance,
             lambda inst: lambda_rank(restrict_to_subgroup(*inst)) == inst[0].ctx.p ** inst[1] * lambda_rank(inst[0]),
             document=lambda inst: {"module": to_obj(inst[0]), "k": inst[1]}),
    Identity("mu-oracle", "presentation invariants match elementary closed forms",
             lambda rng: corpus.random_elementary(rng, rng.choice([3, 5, 7])), _mu_oracle),
    Identity("extension-additivity", "mu and lambda add along torsion extensions",
             _torsion_extension, _extension_additive,
             document=lambda inst: {"A": to_obj(inst[0]), "C": to_obj(inst[1]), "B": to_obj(inst[2])}),
    Identity("mu-equals-chi", "mu equals ord_p chi for p-primary modules",
             lambda rng: corpus.random_elementary(rng, rng.choice([3, 5, 7]), torsion=True, p_only=True), _mu_equals_chi),
    Identity("weierstrass-mult", "mu and lambda are additive under multiplication",
             _weierstrass_pair, _weierstrass_mult,
             document=lambda inst: {"p": inst[0].p, "f": [str(c) for c in inst[1]], "g": [str(c) for c in inst[2]]}),
    Identity("char-sum", "characteristic invariants add over direct sums",
             _char_sum_instance, _char_sum,
             applies=lambda inst: lambda_rank(inst[0]) == 0 and lambda_rank(inst[1]) == 0, document=_pair_doc),
    Identity("induced-rank", "hmrank of an induced module is its Lambda(Gamma)-rank",
             _shapiro_instance, lambda inst: hmrank(induce(*inst)) == lambda_rank(inst[0]),
             document=lambda inst: to_obj(induce(*inst))),
    Identity("twist-rank", "hmrank of a twist is the rank of the inverse eigenspace",
             _twist_instance,
             lambda inst: hmrank(twist(*inst)) == _rank_or_zero(inst[0].component(-inst[1])),
             document=lambda inst: {"module": to_obj(inst[0]), "twist": inst[1]}),
    Identity("hmrank-additive", "hmrank is additive over direct sums",
             _sum_pair_instance,
             lambda inst: hmrank(eigen_direct_sum(*inst)) == hmrank(inst[0]) + hmrank(inst[1]),
             document=_pair_doc),
    Identity("direct-product", "for Gamma x Delta, hmrank is the Euler rank of the trivial eigenspace",
             lambda rng: _eigen_instance(rng, e=0), _direct_product),
    Identity("mu-global-local", "mu variation equals global minus local Tate exponents",
             lambda rng: corpus.random_isogeny_data(rng), _eq402),
    Identity("degree-linearity", "mu variation scales with the number of place copies",
             _linearity_instance,
             lambda inst: isogeny_mu_delta(scale_places(*inst)) == inst[1] * isogeny_mu_delta(inst[0]),
             document=lambda inst: {"data": to_obj(inst[0]), "copies": inst[1]}),
)


def _rank_or_zero(M):
    return 0 if M is None else lambda_rank(M)


def suite_names() -> list[str]:
    return list(IDENTITIES)


def run_verify(suite: str, seed: int, count: int) -> list[VerificationReport]:
    """Run one named identity, or every identity for ``suite == "all"``."""
    if suite == "all":
        names = suite_names()
    elif suite in IDENTITIES:
        names = [suite]
    else:
        raise KeyError(f"unknown suite {suite!r}; choose from all, {', '.join(suite_names())}")
    return [run_identity(IDENTITIES[n], seed, count) for n in names]


def reports_json(reports: list[VerificationReport]) -> str:
    return json.dumps([r.as_dict() for r in reports], indent=2)
