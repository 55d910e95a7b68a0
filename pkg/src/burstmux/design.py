"""Designing codes for a target rate pair.

Without a target, the optimal corner-point superposition code is returned.
With a target inside the capacity region, the designer time-shares the
three extreme codes (the Rv-axis single-stream code, the corner code, the
Ru-axis single-stream code) with dyadic weights: midpointing is the only
composition primitive, so weights are searched over denominators 2^d until
the exact composite rate pair dominates the target component-wise.
"""

from __future__ import annotations

from fractions import Fraction

from .block import BlockCode, build_multiplexed, build_single_stream
from .capacity import MAIN_CASE, RatePair, region
from .compose import time_share
from .errors import RegimeError, TargetError
from .field import GF, GF256

MAX_DEPTH = 8


def _format_constraint(h) -> str:
    def coef(c: Fraction, name: str) -> str:
        if c == 1:
            return name
        return f"({c})*{name}"

    return f"{coef(h.a, 'Rv')} + {coef(h.b, 'Ru')} <= {h.c}"


def corner_code(tv: int, tu: int, b: int, field: GF = GF256) -> BlockCode:
    return build_multiplexed(tv, tu, b, field)


def design(
    tv: int,
    tu: int,
    b: int,
    field: GF = GF256,
    target: tuple[Fraction, Fraction] | None = None,
):
    """Return a verified-regime code whose exact rates dominate the target."""
    reg = region(tv, tu, b)
    if reg.case_tag != MAIN_CASE:
        raise RegimeError(
            f"design requires the Tv > Tu + B regime; ({tv}, {tu}, {b}) falls in "
            f"the {reg.case_tag} case"
        )
    if target is None:
        return corner_code(tv, tu, b, field)
    point = RatePair(Fraction(target[0]), Fraction(target[1]))
    membership = reg.contains(point)
    if not membership:
        violated = [
            _format_constraint(h)
            for h, slack in zip(reg.constraints, membership.slacks)
            if slack < 0
        ]
        if violated:
            raise TargetError(
                f"target ({point.rv}, {point.ru}) violates {'; '.join(violated)}"
            )
        raise TargetError(f"target ({point.rv}, {point.ru}) has a negative rate")

    base_codes = (
        build_single_stream(tv, b, field, stream="v"),
        corner_code(tv, tu, b, field),
        build_single_stream(tu, b, field, stream="u"),
    )
    base_rates = [
        (Fraction(c.params.kv, c.params.n), Fraction(c.params.ku, c.params.n))
        for c in base_codes
    ]
    for depth in range(MAX_DEPTH + 1):
        total = 1 << depth
        for i in range(total + 1):
            for j in range(total + 1 - i):
                k = total - i - j
                rv = (
                    i * base_rates[0][0] + j * base_rates[1][0] + k * base_rates[2][0]
                ) / total
                ru = (
                    i * base_rates[0][1] + j * base_rates[1][1] + k * base_rates[2][1]
                ) / total
                if rv >= point.rv and ru >= point.ru:
                    return _build_share_tree(base_codes, (i, j, k), total)
    raise TargetError(
        f"no dyadic time-share with denominator up to 2^{MAX_DEPTH} dominates "
        f"({point.rv}, {point.ru}); the target hugs the region boundary too tightly"
    )


def _build_share_tree(base_codes, weights: tuple[int, int, int], total: int):
    labels: list[int] = []
    for which, count in enumerate(weights):
        labels.extend([which] * count)
    assert len(labels) == total

    def combine(chunk: list[int]):
        if len(chunk) == 1:
            return base_codes[chunk[0]]
        half = len(chunk) // 2
        left = combine(chunk[:half])
        right = combine(chunk[half:])
        if left == right:
            # Equal halves share the same exact rate pair; the midpoint of a
            # point with itself is the point, so reuse one side directly.
            return left
        return time_share(left, right)

    return combine(labels)
