"""Seeded random generators for verification corpora.

Presentations are injective by construction: a diagonal seed with nonzero
diagonal is conjugated by random elementary row and column operations over
Z[T], which are invertible over Lambda.  Every entry stays within degree 8
and coefficients within [-p^6, p^6]; an operation that would leave that box
is skipped.
"""

from __future__ import annotations

import random

from .arithmetic import ArchPlaceDatum, IsogenyData, PAdicPlaceDatum, PlaceKind
from .group_euler import EigenModule, GDescriptor
from .lambda_modules import LambdaModule, has_short_resolution, make_module
from .omega_modules import ElementaryModule
from .padic_core import ZERO, PrimeContext, element, poly_add, poly_mul, poly_neg

MAX_DIM = 6
MAX_DEGREE = 8


def _in_box(f, bound: int) -> bool:
    return len(f) - 1 <= MAX_DEGREE and all(abs(c) <= bound for c in f)


def random_distinguished(rng: random.Random, p: int, max_degree: int = 3) -> tuple:
    d = rng.randint(1, max_degree)
    lower = [p * rng.randint(-2, 2) for _ in range(d)]
    return element(lower + [1])


def random_poly(rng: random.Random, degree: int, spread: int) -> tuple:
    return element(rng.randint(-spread, spread) for _ in range(degree + 1))


def random_diagonal_entry(rng: random.Random, p: int) -> tuple:
    """A nonzero seed entry; a mix of p-powers, distinguished parts, T and units."""
    kind = rng.randrange(7)
    if kind == 0:
        return (p ** rng.randint(1, 3),)
    if kind == 1:
        return random_distinguished(rng, p)
    if kind == 2:
        return (0, 1)
    if kind == 3:
        # a unit of Lambda: constant term prime to p
        c0 = rng.choice([c for c in range(1, p) if c % p])
        return element([c0 * rng.choice([1, -1])] + [rng.randint(-3, 3) for _ in range(rng.randint(0, 2))])
    if kind == 4:
        return poly_mul((p ** rng.randint(1, 2),), random_distinguished(rng, p, 2))
    if kind == 5:
        return (p * rng.randint(1, p - 1) * rng.choice([1, -1]),)
    f = ZERO
    while not f:
        f = random_poly(rng, rng.randint(0, 3), p)
    return f


def _row_op(M, i, j, c):
    return [r if k != i else [poly_add(x, poly_mul(c, y)) for x, y in zip(r, M[j])] for k, r in enumerate(M)]


def scramble(rng: random.Random, M: list, p: int, steps: int) -> list:
    """Apply random invertible row/column operations, keeping entries in the box."""
    bound = p**6
    n = len(M)
    m = len(M[0]) if n else 0
    for _ in range(steps):
        op = rng.randrange(5)
        if op <= 1 and n >= 2:
            i, j = rng.sample(range(n), 2)
            c = random_poly(rng, rng.randint(0, 1), 2)
            cand = _row_op(M, i, j, c)
        elif op <= 3 and m >= 2:
            i, j = rng.sample(range(m), 2)
            cols = [list(x) for x in zip(*M)]
            c = random_poly(rng, rng.randint(0, 1), 2)
            cols = _row_op(cols, i, j, c)
            cand = [list(x) for x in zip(*cols)]
        elif n >= 2:
            i, j = rng.sample(range(n), 2)
            cand = [list(r) for r in M]
            cand[i], cand[j] = cand[j], [poly_neg(x) for x in cand[i]]
        else:
            continue
        if all(_in_box(x, bound) for r in cand for x in r):
            M = cand
    return M


def random_presentation(rng: random.Random, p: int, max_dim: int = MAX_DIM, square: bool | None = None) -> LambdaModule:
    """An injective presentation with at most ``max_dim`` generators."""
    b = rng.randint(1, max_dim)
    if square is None:
        square = rng.random() < 0.5
    a = b if square else rng.randint(0, b)
    M = [[ZERO] * a for _ in range(b)]
    rows = rng.sample(range(b), a)
    for j, i in enumerate(rows):
        M[i][j] = random_diagonal_entry(rng, p)
    if a:
        M = scramble(rng, M, p, steps=3 * (a + b))
    mod = make_module(p, b, M, a)
    assert has_short_resolution(mod), "corpus generator emitted a non-injective presentation"
    return mod


def random_elementary(rng: random.Random, p: int, torsion: bool | None = None, p_only: bool = False) -> ElementaryModule:
    if torsion is None:
        torsion = rng.random() < 0.6
    free = 0 if torsion else rng.randint(1, 2)
    exps = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 2)))
    parts = ()
    if not p_only:
        parts = tuple((random_distinguished(rng, p, 2), rng.randint(1, 2)) for _ in range(rng.randint(0, 2)))
    if not exps and not parts and not free:
        exps = (rng.randint(1, 3),)
    return ElementaryModule(PrimeContext(p), free, exps, parts)


def random_eigen(rng: random.Random, p: int, e: int | None = None, max_dim: int = 3) -> EigenModule:
    ctx = PrimeContext(p)
    if e is None:
        e = rng.randrange(p - 1)
    idx = rng.sample(range(p - 1), rng.randint(1, min(3, p - 1)))
    return EigenModule(GDescriptor(ctx, e), {j: random_presentation(rng, p, max_dim) for j in idx})


def random_isogeny_data(rng: random.Random) -> IsogenyData:
    p = rng.choice([5, 7, 11, 13])
    k = rng.randint(0, 3)
    arch = []
    for _ in range(rng.randint(1, 6)):
        if rng.random() < 0.5:
            arch.append(ArchPlaceDatum(PlaceKind.COMPLEX, k))
        else:
            arch.append(ArchPlaceDatum(PlaceKind.REAL, rng.randint(0, k)))
    degree = sum(v.kind.local_degree for v in arch)
    p_places = []
    left = degree
    while left:
        d = rng.randint(1, left)
        p_places.append(PAdicPlaceDatum(d, rng.randint(0, k)))
        left -= d
    return IsogenyData(PrimeContext(p), degree, k, tuple(arch), tuple(p_places))
