"""Shared fixtures and independent oracles.

The oracles here deliberately re-derive results from first principles (from
scratch per prefix, naive polynomial arithmetic, direct column selections)
so the package's staged/incremental implementations are checked against a
structurally different computation path.
"""

from __future__ import annotations

import itertools

import pytest

from burstmux import GF2, GF256, explicit_code
from burstmux.field import GF


@pytest.fixture(scope="session")
def gf256() -> GF:
    return GF256


@pytest.fixture(scope="session")
def gf2() -> GF:
    return GF2


@pytest.fixture(scope="session")
def gf16() -> GF:
    return GF(16, 0b10011)


@pytest.fixture(scope="session")
def reference_block_code():
    """Handcrafted (5, 2, 1, 3, 2) binary block code used throughout."""
    generator = [
        [1, 0, 0, 1, 0],
        [0, 1, 0, 0, 1],
        [0, 0, 1, 1, 1],
    ]
    return explicit_code(3, 2, 2, GF2, generator, kv=2, ku=1)


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def clmul_reduce(a: int, b: int, poly: int, degree: int) -> int:
    """Naive carry-less multiply then polynomial reduction over GF(2)."""
    prod = 0
    shift = 0
    while b:
        if b & 1:
            prod ^= a << shift
        b >>= 1
        shift += 1
    for bit in range(prod.bit_length() - 1, degree - 1, -1):
        if prod >> bit & 1:
            prod ^= poly << (bit - degree)
    return prod


def oracle_rref(field, rows, rhs):
    """Plain one-shot reduced row echelon form of [rows | rhs]."""
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivot_rows = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(aug)):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = field.inv(aug[r][col])
        aug[r] = [field.mul(inv, x) for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(aug[i], aug[r])]
        pivot_rows.append((col, r))
        r += 1
    return aug, pivot_rows


def oracle_prefix_solve(code, word, known=None):
    """Earliest-prefix decoding oracle.

    For every prefix length, solves the full linear system from scratch and
    reports, per message row, the earliest position index after which the
    row is uniquely determined, together with its value.  `word` entries are
    ints or None (erased); `known` maps rows to a priori values.
    """
    field = code.field
    k = len(code.generator)
    n = code.params.n
    known = known or {}
    result = [(None, None)] * k
    for prefix in range(n + 1):
        rows = []
        rhs = []
        for r, val in known.items():
            unit = [0] * k
            unit[r] = 1
            rows.append(unit)
            rhs.append(val)
        for pos in range(prefix):
            if word[pos] is None:
                continue
            rows.append([code.generator[r][pos] for r in range(k)])
            rhs.append(word[pos])
        if not rows:
            continue
        aug, pivots = oracle_rref(field, rows, rhs)
        for col, ridx in pivots:
            if result[col][0] is not None:
                continue
            if all(aug[ridx][j] == 0 for j in range(k) if j != col):
                result[col] = (aug[ridx][k], prefix - 1)
    return result


def oracle_check_mds_columns(field, parity) -> bool:
    """Direct definition: every L-column selection of [I_L | V] is invertible."""
    l, b = parity.rows, parity.cols
    if l == 0 or b == 0:
        return True
    full = []
    for i in range(l):
        row = [1 if j == i else 0 for j in range(l)] + list(parity.entries[i])
        full.append(row)
    for cols in itertools.combinations(range(l + b), l):
        sub = [[full[r][c] for c in cols] for r in range(l)]
        if oracle_det(field, sub) == 0:
            return False
    return True


def oracle_det(field, rows) -> int:
    """Determinant by Laplace expansion along the first row."""
    size = len(rows)
    if size == 0:
        return 1
    if size == 1:
        return rows[0][0]
    total = 0
    for j, coef in enumerate(rows[0]):
        if not coef:
            continue
        minor = [[row[c] for c in range(size) if c != j] for row in rows[1:]]
        term = field.mul(coef, oracle_det(field, minor))
        total = field.add(total, term) if j % 2 == 0 else field.sub(total, term)
    return total
