"""Code descriptors: canonical JSON serialization with byte-exact round-trip.

Leaf schema:

    {"kind": "single_stream" | "multiplexed" | "explicit",
     "field": {"order": int, "reduction": int},
     "tv": int, "tu": int, "b": int, "n": int, "kv": int, "ku": int,
     "generator": [row-major hex strings]}

Composites record the composition tree, never a flattened generator:

    {"kind": "concatenated", "q": int, "inner": {...}}
    {"kind": "time_share", "a": {...}, "b": {...}}

Loading a constructed-kind leaf re-derives its parity blocks from the
generator slices and checks the generator against the rebuilt template, so
a descriptor cannot claim a structure its matrix does not have.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .block import (
    EXPLICIT,
    MULTIPLEXED,
    SINGLE_STREAM,
    BlockCode,
    CodeParams,
    explicit_code,
)
from .compose import CONCATENATED, TIME_SHARE, CompositeCode, concatenate, time_share
from .errors import DescriptorError
from .field import GF, ParityMatrix, mat_from_rows
from .stream import symbol_width


def _entry_format(field: GF) -> str:
    return f"0{symbol_width(field.order)}x"


def to_dict(code) -> dict:
    if isinstance(code, CompositeCode):
        if code.kind == CONCATENATED:
            return {
                "kind": CONCATENATED,
                "q": code.copies[0],
                "inner": to_dict(code.children[0]),
            }
        return {
            "kind": TIME_SHARE,
            "a": to_dict(code.children[0]),
            "b": to_dict(code.children[1]),
        }
    p = code.params
    fmt = _entry_format(code.field)
    return {
        "kind": code.kind,
        "field": {"order": code.field.order, "reduction": code.field.reduction},
        "tv": p.tv,
        "tu": p.tu,
        "b": p.b,
        "n": p.n,
        "kv": p.kv,
        "ku": p.ku,
        "generator": [format(x, fmt) for row in code.generator for x in row],
    }


def dumps(code) -> str:
    return json.dumps(to_dict(code), separators=(",", ":"))


def code_hash(code) -> str:
    return hashlib.sha256(dumps(code).encode()).hexdigest()


def _require(d: dict, key: str):
    if key not in d:
        raise DescriptorError(f"descriptor missing field {key!r}")
    return d[key]


def _leaf_from_dict(d: dict) -> BlockCode:
    kind = d["kind"]
    fd = _require(d, "field")
    field = GF(int(_require(fd, "order")), int(_require(fd, "reduction")))
    tv = int(_require(d, "tv"))
    tu = int(_require(d, "tu"))
    b = int(_require(d, "b"))
    n = int(_require(d, "n"))
    kv = int(_require(d, "kv"))
    ku = int(_require(d, "ku"))
    flat = [int(x, 16) for x in _require(d, "generator")]
    if len(flat) != (kv + ku) * n:
        raise DescriptorError(
            f"generator has {len(flat)} entries, expected (kv+ku)*n = {(kv + ku) * n}"
        )
    rows = [flat[r * n : (r + 1) * n] for r in range(kv + ku)]
    if kind == EXPLICIT:
        return explicit_code(tv, tu, b, field, rows, kv, ku)
    if kind == SINGLE_STREAM:
        if (kv == 0) == (ku == 0):
            raise DescriptorError("single_stream descriptor must carry exactly one stream")
        t = kv or ku
        if n != t + b:
            raise DescriptorError(f"single_stream dimensions inconsistent: n={n} != T+B={t + b}")
        parity = ParityMatrix(
            t - b, b, mat_from_rows(rows[b + i][t : t + b] for i in range(t - b))
        )
        code = BlockCode(
            CodeParams(tv, tu, b, n, kv, ku),
            field,
            mat_from_rows(rows),
            SINGLE_STREAM,
            v_parity=parity if kv else None,
            u_parity=parity if ku else None,
        )
        _check_template(code, _single_stream_template(t, b, parity))
        return code
    if kind == MULTIPLEXED:
        if kv != tv - tu or ku != tu or n != tv + b:
            raise DescriptorError("multiplexed dimensions inconsistent with (tv, tu, b)")
        v_par = ParityMatrix(
            kv - b, b, mat_from_rows(rows[b + i][kv : kv + b] for i in range(kv - b))
        )
        u_par = ParityMatrix(
            ku - b, b, mat_from_rows(rows[kv + b + i][kv + tu : n] for i in range(ku - b))
        )
        code = BlockCode(
            CodeParams(tv, tu, b, n, kv, ku),
            field,
            mat_from_rows(rows),
            MULTIPLEXED,
            v_parity=v_par,
            u_parity=u_par,
        )
        _check_template(code, _multiplexed_template(code))
        return code
    raise DescriptorError(f"unknown descriptor kind {kind!r}")


def _single_stream_template(t: int, b: int, parity: ParityMatrix):
    n = t + b
    rows = []
    for j in range(b):
        row = [0] * n
        row[j] = 1
        row[t + j] = 1
        rows.append(row)
    for i in range(t - b):
        row = [0] * n
        row[b + i] = 1
        for j in range(b):
            row[t + j] = parity.entries[i][j]
        rows.append(row)
    return mat_from_rows(rows)


def _multiplexed_template(code: BlockCode):
    p = code.params
    kv, ku, b, n = p.kv, p.ku, p.b, p.n
    rows = []
    for r in range(kv):
        row = [0] * n
        row[r] = 1
        for j in range(b):
            row[kv + j] = (1 if j == r else 0) if r < b else code.v_parity.entries[r - b][j]
        rows.append(row)
    for r in range(ku):
        row = [0] * n
        row[kv + r] = 1
        if r < b:
            row[kv + p.tu + r] = 1
        else:
            for j in range(b):
                row[kv + p.tu + j] = code.u_parity.entries[r - b][j]
        rows.append(row)
    return mat_from_rows(rows)


def _check_template(code: BlockCode, template) -> None:
    if code.generator != template:
        raise DescriptorError(
            f"generator does not match the {code.kind} block structure"
        )


def from_dict(d: dict):
    kind = _require(d, "kind")
    if kind == CONCATENATED:
        return concatenate(from_dict(_require(d, "inner")), int(_require(d, "q")))
    if kind == TIME_SHARE:
        return time_share(from_dict(_require(d, "a")), from_dict(_require(d, "b")))
    return _leaf_from_dict(d)


def loads(text: str):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"descriptor is not valid JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise DescriptorError("descriptor must be a JSON object")
    return from_dict(d)


def load_path(path: str | Path):
    return loads(Path(path).read_text())


def save_path(code, path: str | Path) -> None:
    Path(path).write_text(dumps(code) + "\n")
