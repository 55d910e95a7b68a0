"""Shared request handlers behind both the CLI and the HTTP service.

Each operation takes plain values, returns a JSON-ready dict, and embeds
the full invocation (arguments, seeds, code hash) so any report can be
reproduced from its own metadata.
"""

from __future__ import annotations

from fractions import Fraction

from . import descriptor as desc
from .capacity import CapacityRegion, region
from .channel import parse_pattern
from .compose import code_dimensions
from .design import design
from .errors import BurstmuxError
from .field import GF, GF256
from .simulate import simulate
from .verify import verify_code


def parse_field(spec: str | None) -> GF:
    """Parse the ORDER:POLY field flag; POLY accepts decimal or 0x literals."""
    if spec is None:
        return GF256
    order_str, sep, poly_str = spec.partition(":")
    if not sep:
        raise BurstmuxError(f"field spec must be ORDER:POLY, got {spec!r}")
    try:
        order = int(order_str, 0)
        poly = int(poly_str, 0)
    except ValueError as exc:
        raise BurstmuxError(f"malformed field spec {spec!r}: {exc}") from exc
    return GF(order, poly)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise BurstmuxError(f"malformed rational {text!r}: {exc}") from exc


def design_op(
    tv: int,
    tu: int,
    b: int,
    field: str | None = None,
    target_rv: str | None = None,
    target_ru: str | None = None,
) -> dict:
    if (target_rv is None) != (target_ru is None):
        raise BurstmuxError("provide both target rates or neither")
    gf = parse_field(field)
    target = None
    if target_rv is not None:
        target = (parse_rational(target_rv), parse_rational(target_ru))
    code = design(tv, tu, b, gf, target)
    n, kv, ku = code_dimensions(code)
    rv, ru = Fraction(kv, n), Fraction(ku, n)
    return {
        "descriptor": desc.to_dict(code),
        "rates": {"rv": str(rv), "ru": str(ru)},
        "dimensions": {"n": n, "kv": kv, "ku": ku},
        "code_hash": desc.code_hash(code),
        "invocation": {
            "command": "design",
            "tv": tv,
            "tu": tu,
            "b": b,
            "field": field,
            "target_rv": target_rv,
            "target_ru": target_ru,
        },
    }


def verify_op(descriptor: dict, burst: int, horizon: int | None = None) -> dict:
    code = desc.from_dict(descriptor)
    report = verify_code(code, burst, horizon)
    report.invocation = {
        "command": "verify",
        "burst": burst,
        "horizon": horizon,
        "code_sha256": desc.code_hash(code),
    }
    return report.to_dict()


def region_to_dict(reg: CapacityRegion) -> dict:
    return {
        "case_tag": reg.case_tag,
        "tv": reg.tv,
        "tu": reg.tu,
        "b": reg.b,
        "constraints": [[str(h.a), str(h.b), str(h.c)] for h in reg.constraints],
        "vertices": [[str(rv), str(ru)] for rv, ru in reg.vertices],
    }


def region_to_csv(reg: CapacityRegion) -> str:
    lines = ["rv_num,rv_den,rv_decimal,ru_num,ru_den,ru_decimal"]
    for rv, ru in reg.vertices:
        lines.append(
            f"{rv.numerator},{rv.denominator},{float(rv)!r},"
            f"{ru.numerator},{ru.denominator},{float(ru)!r}"
        )
    return "\n".join(lines) + "\n"


def region_op(tv: int, tu: int, b: int) -> dict:
    return region_to_dict(region(tv, tu, b))


def simulate_op(descriptor: dict, pattern: str, slots: int, seed: int) -> dict:
    if slots < 0:
        raise BurstmuxError(f"slots must be non-negative, got {slots}")
    code = desc.from_dict(descriptor)
    report = simulate(code, parse_pattern(pattern), slots, seed)
    report.invocation = {
        "command": "simulate",
        "pattern": pattern,
        "slots": slots,
        "seed": seed,
        "code_sha256": desc.code_hash(code),
    }
    return report.to_dict()
