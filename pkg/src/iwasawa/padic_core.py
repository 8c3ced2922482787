"""Exact integer, polynomial and p-adic kernels.

Elements of the Iwasawa algebra Lambda = Z_p[[T]] are represented by integer
polynomials in T, stored as tuples of Python ints in ascending degree with no
trailing zeros (the zero element is the empty tuple).  Ranks over Frac(Lambda)
agree with ranks over Q(T) because both fields contain the fraction field of
Z[T], so every rank computed here is exact.

Polynomials with coefficients mod p use the same tuple encoding with entries
reduced into ``range(p)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import DomainError, FormatError

IwasawaElement = tuple  # tuple[int, ...], ascending powers of T
Matrix = tuple  # tuple of rows, each a tuple of IwasawaElement

ZERO: IwasawaElement = ()
ONE: IwasawaElement = (1,)
T: IwasawaElement = (0, 1)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeContext:
    """The odd prime p everything is localised at."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise DomainError(f"p must be an integer, got {self.p!r}")
        if self.p < 3 or not _is_prime(self.p):
            raise DomainError(f"p must be an odd prime >= 3, got {self.p}")


# ---------------------------------------------------------------------------
# polynomial arithmetic over Z (and over F_p where noted)


def element(coeffs: Iterable[int]) -> IwasawaElement:
    """Canonical element from ascending integer coefficients."""
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f: IwasawaElement) -> int:
    """Degree in T; -1 for the zero element."""
    return len(f) - 1


def poly_add(f, g):
    if len(f) < len(g):
        f, g = g, f
    c = list(f)
    for i, x in enumerate(g):
        c[i] += x
    return _trim(c)


def poly_neg(f):
    return tuple(-x for x in f)


def poly_sub(f, g):
    return poly_add(f, poly_neg(g))


def poly_scale(f, k: int):
    if k == 0:
        return ZERO
    return tuple(k * x for x in f)


def poly_mul(f, g):
    if not f or not g:
        return ZERO
    c = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                c[i + j] += x * y
    return _trim(c)


def poly_pow(f, n: int):
    out = ONE
    base = f
    while n:
        if n & 1:
            out = poly_mul(out, base)
        base = poly_mul(base, base)
        n >>= 1
    return out


def poly_exact_div(f, g):
    """Quotient f / g in Z[T]; the division must be exact."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return ZERO
    rem = list(f)
    dg = len(g) - 1
    lead = g[-1]
    q = [0] * (len(f) - dg)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = rem[k + dg]
        if c:
            qk, r = divmod(c, lead)
            if r:
                raise ArithmeticError("inexact polynomial division")
            q[k] = qk
            for j, y in enumerate(g):
                rem[k + j] -= qk * y
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def evaluate(f: IwasawaElement, t: int) -> int:
    acc = 0
    for x in reversed(f):
        acc = acc * t + x
    return acc


def reduce_mod(f: IwasawaElement, p: int) -> tuple:
    """Coefficientwise reduction into F_p[T]."""
    return _trim([x % p for x in f])


def _fp_ops(p: int):
    def add(f, g):
        if len(f) < len(g):
            f, g = g, f
        c = list(f)
        for i, x in enumerate(g):
            c[i] = (c[i] + x) % p
        return _trim(c)

    def sub(f, g):
        return add(f, tuple((-x) % p for x in g))

    def mul(f, g):
        if not f or not g:
            return ZERO
        c = [0] * (len(f) + len(g) - 1)
        for i, x in enumerate(f):
            if x:
                for j, y in enumerate(g):
                    c[i + j] += x * y
        return _trim([x % p for x in c])

    def exact_div(f, g):
        if not f:
            return ZERO
        rem = list(f)
        dg = len(g) - 1
        inv = pow(g[-1], -1, p)
        q = [0] * (len(f) - dg)
        for k in range(len(f) - 1 - dg, -1, -1):
            c = rem[k + dg] % p
            if c:
                qk = c * inv % p
                q[k] = qk
                for j, y in enumerate(g):
                    rem[k + j] = (rem[k + j] - qk * y) % p
        if any(x % p for x in rem):
            raise ArithmeticError("inexact polynomial division mod p")
        return _trim(q)

    return add, sub, mul, exact_div


# ---------------------------------------------------------------------------
# valuations and Weierstrass preparation


def valp(n: int, ctx: PrimeContext) -> int:
    """Largest k with p**k dividing the nonzero integer n."""
    if n == 0:
        raise DomainError("valuation of zero is undefined")
    p = ctx.p
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def content_valuation(f: IwasawaElement, ctx: PrimeContext) -> float | int:
    """Minimum p-adic valuation of the coefficients; ``math.inf`` for zero."""
    f = element(f)
    if not f:
        return math.inf
    return min(valp(c, ctx) for c in f if c)


@dataclass(frozen=True)
class WeierstrassData:
    """mu and lambda of a nonzero element f = p**mu * (unit) * (distinguished of degree lambda)."""

    mu: int
    lambda_: int

    @property
    def is_unit(self) -> bool:
        return self.mu == 0 and self.lambda_ == 0


def weierstrass_prepare(f: IwasawaElement, ctx: PrimeContext) -> WeierstrassData:
    """Read mu and lambda off the Newton polygon of a nonzero polynomial.

    mu is the content valuation; lambda is the first index whose coefficient
    attains it, i.e. the Weierstrass degree of f / p**mu.
    """
    f = element(f)
    if not f:
        raise DomainError("Weierstrass preparation of zero is undefined")
    mu = content_valuation(f, ctx)
    for i, c in enumerate(f):
        if c and valp(c, ctx) == mu:
            return WeierstrassData(mu=mu, lambda_=i)
    raise AssertionError("unreachable")  # pragma: no cover


# ---------------------------------------------------------------------------
# matrices


def as_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, int]:
    """Validate a rectangular matrix of polynomials and canonicalise entries.

    Returns the canonical rows and the column count.  ``ncols`` is needed only
    for matrices with no rows.
    """
    rows = [list(r) for r in rows]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise FormatError("ragged matrix: rows have different lengths")
        if ncols is not None and ncols != width:
            raise FormatError(f"expected {ncols} columns, found {width}")
    else:
        width = ncols or 0
    canon = tuple(tuple(_coerce_entry(x) for x in r) for r in rows)
    return canon, width


def _coerce_entry(x) -> IwasawaElement:
    if isinstance(x, int) and not isinstance(x, bool):
        return element((x,))
    if isinstance(x, (tuple, list)):
        return element(x)
    raise FormatError(f"matrix entry must be an int or coefficient sequence, got {x!r}")


def specialize_at_zero(A: Matrix) -> tuple[tuple[int, ...], ...]:
    """Integer matrix obtained by setting T = 0."""
    return tuple(tuple(f[0] if f else 0 for f in row) for row in A)


def _bareiss(
    rows: Matrix,
    sub: Callable,
    mul: Callable,
    exact_div: Callable,
) -> tuple[int, object, int]:
    """Fraction-free elimination with full pivoting.

    The pivot is the nonzero entry of lowest degree in the remaining block,
    ties broken by lowest (row, column) index.  Returns (rank, last pivot,
    permutation sign); for a square nonsingular matrix, sign * last pivot is
    the determinant.
    """
    M = [list(r) for r in rows]
    n = len(M)
    m = len(M[0]) if n else 0
    prev = ONE
    sign = 1
    rank = 0
    for k in range(min(n, m)):
        best = None
        for i in range(k, n):
            Mi = M[i]
            for j in range(k, m):
                e = Mi[j]
                if e:
                    key = (len(e), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, pi, pj = best
        if pi != k:
            M[k], M[pi] = M[pi], M[k]
            sign = -sign
        if pj != k:
            for r in M:
                r[k], r[pj] = r[pj], r[k]
            sign = -sign
        piv = M[k][k]
        Mk = M[k]
        for i in range(k + 1, n):
            Mi = M[i]
            a = Mi[k]
            for j in range(k + 1, m):
                x = mul(piv, Mi[j])
                if a and Mk[j]:
                    x = sub(x, mul(a, Mk[j]))
                Mi[j] = exact_div(x, prev) if x else ZERO
            Mi[k] = ZERO
        prev = piv
        rank += 1
    return rank, prev, sign


@lru_cache(maxsize=4096)
def _rank_zt(A: Matrix) -> int:
    if not A or not A[0]:
        return 0
    return _bareiss(A, poly_sub, poly_mul, poly_exact_div)[0]


def rank_over_rational_functions(A: Sequence[Sequence], ncols: int | None = None) -> int:
    """Rank of a matrix with entries in Z[T] over the field Q(T)."""
    rows, _ = as_matrix(A, ncols)
    return _rank_zt(rows)


def rank_over_fp_functions(A: Sequence[Sequence], ctx: PrimeContext, ncols: int | None = None) -> int:
    """Rank over F_p(T) after reducing every coefficient mod p."""
    rows, _ = as_matrix(A, ncols)
    return _rank_fpt(tuple(tuple(reduce_mod(f, ctx.p) for f in r) for r in rows), ctx.p)


@lru_cache(maxsize=4096)
def _rank_fpt(A: Matrix, p: int) -> int:
    if not A or not A[0]:
        return 0
    _, sub, mul, exact_div = _fp_ops(p)
    return _bareiss(A, sub, mul, exact_div)[0]


def determinant(A: Sequence[Sequence]) -> IwasawaElement:
    """Determinant in Z[T] of a square matrix."""
    rows, m = as_matrix(A)
    if len(rows) != m:
        raise FormatError(f"determinant needs a square matrix, got {len(rows)}x{m}")
    if m == 0:
        return ONE
    rank, last, sign = _bareiss(rows, poly_sub, poly_mul, poly_exact_div)
    if rank < m:
        return ZERO
    return poly_scale(last, sign)


# ---------------------------------------------------------------------------
# integer matrices


def rank_over_rationals(B: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix (fraction-free elimination)."""
    M = [list(map(int, r)) for r in B]
    n = len(M)
    m = len(M[0]) if n else 0
    rank = 0
    prev = 1
    for k in range(m):
        if rank == n:
            break
        pivot_row = next((i for i in range(rank, n) if M[i][k]), None)
        if pivot_row is None:
            continue
        M[rank], M[pivot_row] = M[pivot_row], M[rank]
        piv = M[rank][k]
        for i in range(rank + 1, n):
            a = M[i][k]
            Mi, Mr = M[i], M[rank]
            for j in range(k + 1, m):
                Mi[j] = (piv * Mi[j] - a * Mr[j]) // prev
            Mi[k] = 0
        prev = piv
        rank += 1
    return rank


def rank_mod_p(B: Sequence[Sequence[int]], p: int) -> int:
    """Rank over F_p of an integer matrix."""
    M = [[x % p for x in r] for r in B]
    n = len(M)
    m = len(M[0]) if n else 0
    rank = 0
    for k in range(m):
        if rank == n:
            break
        pivot_row = next((i for i in range(rank, n) if M[i][k]), None)
        if pivot_row is None:
            continue
        M[rank], M[pivot_row] = M[pivot_row], M[rank]
        inv = pow(M[rank][k], -1, p)
        Mr = M[rank]
        for i in range(rank + 1, n):
            a = M[i][k] * inv % p
            if a:
                Mi = M[i]
                for j in range(k, m):
                    Mi[j] = (Mi[j] - a * Mr[j]) % p
        rank += 1
    return rank


@dataclass(frozen=True)
class ZpModuleShape:
    """Z_p^free_rank plus cyclic factors Z/p^e, exponents sorted descending."""

    free_rank: int = 0
    torsion_exponents: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.free_rank < 0:
            raise DomainError("free rank must be nonnegative")
        exps = tuple(sorted((int(e) for e in self.torsion_exponents), reverse=True))
        if any(e <= 0 for e in exps):
            raise DomainError("torsion exponents must be positive")
        object.__setattr__(self, "torsion_exponents", exps)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order_exponent(self) -> int:
        """ord_p of the order of the torsion part."""
        return sum(self.torsion_exponents)

    def __add__(self, other: "ZpModuleShape") -> "ZpModuleShape":
        return ZpModuleShape(
            self.free_rank + other.free_rank,
            self.torsion_exponents + other.torsion_exponents,
        )

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z_p" if self.free_rank == 1 else f"Z_p^{self.free_rank}")
        parts += [f"Z/p^{e}" if e > 1 else "Z/p" for e in self.torsion_exponents]
        return " + ".join(parts) if parts else "0"


def snf_p_local(B: Sequence[Sequence[int]], ctx: PrimeContext, nrows: int | None = None) -> ZpModuleShape:
    """Shape of the cokernel of B : Z_p^cols -> Z_p^rows.

    Smith form over the local ring Z_(p): repeatedly take the entry of least
    valuation as pivot and clear its row and column.  ``nrows`` is only needed
    when B has no columns but a nonzero number of rows is meant.
    """
    M = [[Fraction(int(x)) for x in r] for r in B]
    n = len(M) if nrows is None else nrows
    m = len(M[0]) if M else 0
    if M and len(M) != n:
        raise FormatError("row count mismatch")
    if any(len(r) != m for r in M):
        raise FormatError("ragged matrix: rows have different lengths")
    p = ctx.p
    exps = []
    rank = 0
    for k in range(min(n, m)):
        best = None
        for i in range(k, n):
            for j in range(k, m):
                x = M[i][j]
                if x:
                    v = _valp_fraction(x, p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, pi, pj = best
        M[k], M[pi] = M[pi], M[k]
        for r in M:
            r[k], r[pj] = r[pj], r[k]
        piv = M[k][k]
        for i in range(k + 1, n):
            a = M[i][k] / piv
            if a:
                Mi, Mk = M[i], M[k]
                for j in range(k, m):
                    Mi[j] -= a * Mk[j]
        # column clearing does not affect the remaining block once the pivot
        # column below the diagonal is zero
        rank += 1
        if v:
            exps.append(v)
    return ZpModuleShape(n - rank, tuple(exps))


def _valp_fraction(x: Fraction, p: int) -> int:
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v
