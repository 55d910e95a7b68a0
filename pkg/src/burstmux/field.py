"""Finite-field arithmetic and systematic MDS parity matrices.

Two families of fields are supported:

* prime fields GF(p), where the reduction descriptor is the prime itself;
* binary extension fields GF(2^m) for 2 <= m <= 16, where the reduction
  descriptor is the irreducible polynomial encoded as an integer bitmask
  (e.g. 0x11D for the usual degree-8 polynomial).

Elements are plain Python ints in [0, order).  Extension-field products go
through precomputed log/antilog tables, so construction pays an O(order)
setup cost and each multiply afterwards is two lookups.

An L x B parity matrix V is "systematic MDS" when every choice of L columns
of [I_L | V] is invertible, which is equivalent to every square submatrix
of V being nonsingular.  `mds_parity` builds such a V deterministically by
reducing a Vandermonde generator to systematic form, and `check_mds`
verifies the property.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass

from .errors import FieldError, FieldSizeError

logger = logging.getLogger(__name__)

_MAX_ORDER = 1 << 16


def _factor_prime_power(order: int) -> tuple[int, int]:
    """Return (p, m) with order == p**m, or raise FieldError."""
    if order < 2:
        raise FieldError(f"field order must be at least 2, got {order}")
    n = order
    p = None
    for cand in range(2, n + 1):
        if cand * cand > n:
            p = n
            break
        if n % cand == 0:
            p = cand
            break
    m = 0
    while n % p == 0:
        n //= p
        m += 1
    if n != 1:
        raise FieldError(f"field order {order} is not a prime power")
    return p, m


def _poly_mulmod2(a: int, b: int, mod: int, deg: int) -> int:
    """Carry-less multiply of GF(2) polynomials a*b reduced modulo mod."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= mod
    return out


def _is_irreducible_gf2(poly: int, deg: int) -> bool:
    """Rabin test: poly of degree deg is irreducible over GF(2)."""
    # x^(2^deg) == x mod poly, and x^(2^(deg/q)) != x for prime divisors q.
    def frob(times: int) -> int:
        x = 0b10
        for _ in range(times):
            x = _poly_mulmod2(x, x, poly, deg)
        return x

    if frob(deg) != 0b10:
        return False
    d = deg
    factors = set()
    f = 2
    while f * f <= d:
        while d % f == 0:
            factors.add(f)
            d //= f
        f += 1
    if d > 1:
        factors.add(d)
    for q in factors:
        y = frob(deg // q) ^ 0b10
        # gcd(y, poly) must be 1
        a, b = poly, y
        while b:
            if a.bit_length() < b.bit_length():
                a, b = b, a
                continue
            a ^= b << (a.bit_length() - b.bit_length())
        if a != 1:
            return False
    return True


class GF:
    """Finite field of the given order with a fixed reduction descriptor.

    Immutable after construction; instances with equal (order, reduction)
    define identical arithmetic and are safe to share across workers.
    """

    __slots__ = ("order", "reduction", "char", "degree", "_exp", "_log")

    def __init__(self, order: int, reduction: int) -> None:
        p, m = _factor_prime_power(order)
        if order > _MAX_ORDER:
            raise FieldError(f"fields beyond 2^16 are unsupported, got order {order}")
        self.order = order
        self.reduction = reduction
        self.char = p
        self.degree = m
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if m == 1:
            if reduction != p:
                raise FieldError(
                    f"prime field GF({p}) requires reduction descriptor {p}, got {reduction}"
                )
            return
        if p != 2:
            raise FieldError(
                f"extension fields of odd characteristic (order {order}) are unsupported"
            )
        if reduction.bit_length() != m + 1:
            raise FieldError(
                f"reduction 0x{reduction:X} has degree {reduction.bit_length() - 1}, "
                f"expected degree {m} for order {order}"
            )
        if not _is_irreducible_gf2(reduction, m):
            raise FieldError(f"reduction polynomial 0x{reduction:X} is reducible")
        self._build_tables()

    def _build_tables(self) -> None:
        q = self.order
        # Find a multiplicative generator; the reduction only needs to be
        # irreducible, so x itself may not generate the full group.
        for g in range(2, q):
            seen = 1
            val = g
            order = 1
            while val != 1:
                val = _poly_mulmod2(val, g, self.reduction, self.degree)
                order += 1
                if order > q:  # pragma: no cover - guards table corruption
                    raise FieldError("multiplicative order overflow; bad reduction")
            if order == q - 1:
                gen = g
                break
        else:  # pragma: no cover - every finite field has a generator
            raise FieldError("no multiplicative generator found")
        exp = [0] * (2 * q)
        log = [0] * q
        val = 1
        for i in range(q - 1):
            exp[i] = val
            log[val] = i
            val = _poly_mulmod2(val, gen, self.reduction, self.degree)
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        self._exp = exp
        self._log = log

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GF)
            and self.order == other.order
            and self.reduction == other.reduction
        )

    def __hash__(self) -> int:
        return hash((self.order, self.reduction))

    def __repr__(self) -> str:
        if self.degree == 1:
            return f"GF({self.order})"
        return f"GF({self.order}, 0x{self.reduction:X})"

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise FieldError(f"{a!r} is not an element of {self!r}")
        return a

    def add(self, a: int, b: int) -> int:
        if self.char == 2:
            return a ^ b
        return (a + b) % self.order

    def sub(self, a: int, b: int) -> int:
        if self.char == 2:
            return a ^ b
        return (a - b) % self.order

    def neg(self, a: int) -> int:
        if self.char == 2:
            return a
        return (-a) % self.order

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            return (a * b) % self.order
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse; singular system")
        if self._exp is None:
            return pow(a, self.order - 2, self.order)
        return self._exp[(self.order - 1) - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        return range(self.order)


def field_new(order: int, reduction: int) -> GF:
    """Construct a field spec; rejects non-prime-power orders and reducible polynomials."""
    return GF(order, reduction)


#: Default field used by constructions: GF(2^8) with the standard primitive
#: polynomial; large enough for every parameter sweep in scope and byte-aligned.
GF256 = GF(256, 0x11D)
GF2 = GF(2, 2)


def field_mul(f: GF, a: int, b: int) -> int:
    return f.mul(f.check(a), f.check(b))


def field_inv(f: GF, a: int) -> int:
    return f.inv(f.check(a))


# ---------------------------------------------------------------------------
# Small dense matrices as tuples of row-tuples.
# ---------------------------------------------------------------------------

Matrix = tuple[tuple[int, ...], ...]


def mat_from_rows(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def vec_mat_mul(f: GF, vec, mat: Matrix) -> list[int]:
    """Row vector times matrix."""
    if not mat:
        return []
    ncols = len(mat[0])
    out = [0] * ncols
    for x, row in zip(vec, mat):
        if x == 0:
            continue
        for j, g in enumerate(row):
            if g:
                out[j] = f.add(out[j], f.mul(x, g))
    return out


def mat_det(f: GF, rows) -> int:
    """Determinant by Gaussian elimination; rows is a square list-of-lists."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    det = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = f.neg(det)
        det = f.mul(det, a[col][col])
        inv = f.inv(a[col][col])
        for r in range(col + 1, n):
            if a[r][col]:
                factor = f.mul(a[r][col], inv)
                arow, crow = a[r], a[col]
                for j in range(col, n):
                    if crow[j]:
                        arow[j] = f.sub(arow[j], f.mul(factor, crow[j]))
    return det


def mat_rank(f: GF, rows) -> int:
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(a)):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = f.inv(a[rank][col])
        a[rank] = [f.mul(inv, x) for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][col]:
                factor = a[r][col]
                a[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == len(a):
            break
    return rank


def solve_square(f: GF, rows, rhs) -> list[int]:
    """Solve A x = rhs for square A; raises ZeroDivisionError if singular."""
    n = len(rows)
    a = [list(r) + [v] for r, v in zip(rows, rhs)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = f.inv(a[col][col])
        a[col] = [f.mul(inv, x) for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


# ---------------------------------------------------------------------------
# Systematic MDS parity matrices.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParityMatrix:
    """L x B parity block of a systematic MDS (L+B, L)-code.

    `entries` is a tuple of L row-tuples of length B; either dimension may
    be zero (the degenerate corners need empty blocks, not special cases).
    """

    rows: int
    cols: int
    entries: Matrix

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise FieldError("parity matrix dimensions do not match entries")

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)


def mds_parity(f: GF, l: int, b: int) -> ParityMatrix:
    """Deterministic systematic MDS parity for an (l+b, l)-code over f.

    Built from the Vandermonde generator on evaluation points 0..l+b-1 and
    reduced to systematic form [I_l | V]; row operations preserve the
    any-l-columns-invertible property, so V inherits it.
    """
    if l < 0 or b < 0:
        raise FieldError("parity dimensions must be non-negative")
    if l == 0 or b == 0:
        return ParityMatrix(l, b, tuple(tuple() for _ in range(l)))
    if f.order < l + b:
        raise FieldSizeError(
            f"field size insufficient: systematic MDS ({l + b}, {l})-code needs "
            f"|F| >= {l + b}, got {f.order}"
        )
    points = list(range(l + b))
    vand = []
    for i in range(l):
        row = []
        for x in points:
            row.append(pow_elem(f, x, i))
        vand.append(row)
    # Reduce the first l columns to the identity.
    for col in range(l):
        piv = None
        for r in range(col, l):
            if vand[r][col]:
                piv = r
                break
        if piv is None:  # pragma: no cover - Vandermonde blocks are invertible
            raise FieldError("degenerate Vandermonde system")
        vand[col], vand[piv] = vand[piv], vand[col]
        inv = f.inv(vand[col][col])
        vand[col] = [f.mul(inv, x) for x in vand[col]]
        for r in range(l):
            if r != col and vand[r][col]:
                factor = vand[r][col]
                vand[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(vand[r], vand[col])]
    entries = mat_from_rows(row[l:] for row in vand)
    return ParityMatrix(l, b, entries)


def pow_elem(f: GF, x: int, e: int) -> int:
    out = 1
    for _ in range(e):
        out = f.mul(out, x)
    return out


def check_mds(
    f: GF,
    v: ParityMatrix,
    *,
    max_exhaustive: int = 20,
    samples: int = 20000,
    seed: int = 0,
) -> bool:
    """True iff every L-column selection of [I_L | V] is invertible.

    Uses the equivalent criterion that every square submatrix of V must be
    nonsingular (choosing identity columns reduces the selection to the
    complementary minor of V).  Exhaustive for L+B <= max_exhaustive;
    larger matrices are sampled and the sample count logged.
    """
    l, b = v.rows, v.cols
    if l == 0 or b == 0:
        return True
    if l + b <= max_exhaustive:
        for k in range(1, min(l, b) + 1):
            for rsel in itertools.combinations(range(l), k):
                rows = [v.entries[r] for r in rsel]
                for csel in itertools.combinations(range(b), k):
                    sub = [[row[c] for c in csel] for row in rows]
                    if mat_det(f, sub) == 0:
                        return False
        return True
    rng = random.Random(seed)
    kmax = min(l, b)
    for _ in range(samples):
        k = rng.randint(1, kmax)
        rsel = rng.sample(range(l), k)
        csel = rng.sample(range(b), k)
        sub = [[v.entries[r][c] for c in csel] for r in rsel]
        if mat_det(f, sub) == 0:
            return False
    logger.info("check_mds sampled %d random minors of a %dx%d parity", samples, l, b)
    return True
