"""Exhaustive burst-correction verification for block and streaming codes.

Both sweeps check every burst placement against a message basis: by
linearity of encoding and of every solve the decoder performs, correctness
on all unit-vector messages implies correctness on the whole message space
(asserted against random messages in the test suite).

The streaming sweep runs per diagonal.  A slot burst meets the diagonal
codeword starting at slot m as an in-window erasure set, and warm-up
diagonals (m < 0) additionally know their negative-slot symbols are zero.
Two (start, diagonal) pairs with the same in-window erasure set and the
same known-row set are the same decoding problem, so each distinct
situation is decoded once; the sweep horizon (default 2n + Tv burst starts)
covers every situation the unbounded timeline can produce, because the
interleave is time-invariant once the warm-up window has passed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .block import BlockCode, decode_cells, encode_block
from .channel import ERASED, enumerate_bursts
from .compose import CompositeCode, distinct_leaves
from .errors import BurstmuxError

FAILURE_CAP = 200


@dataclass(frozen=True)
class Failure:
    burst_start: int
    burst_len: int
    diagonal: int | None
    stream: str
    index: int
    deadline: int
    actual: object  # recovery time, "unrecovered", or "wrong_value:<v>"
    component: int | None = None

    def to_dict(self) -> dict:
        return {
            "burst_start": self.burst_start,
            "burst_len": self.burst_len,
            "diagonal": self.diagonal,
            "stream": self.stream,
            "index": self.index,
            "deadline": self.deadline,
            "actual": self.actual,
            "component": self.component,
        }


@dataclass
class VerificationReport:
    params: dict
    burst: int
    horizon: int | None
    mode: str
    patterns_checked: int
    situations_checked: int
    basis_messages: int
    failures: list[Failure]
    failure_count: int
    deadline_witnesses: list[dict]
    wall_time: float
    components: int = 1
    invocation: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_dict(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "params": self.params,
            "burst": self.burst,
            "horizon": self.horizon,
            "mode": self.mode,
            "patterns_checked": self.patterns_checked,
            "situations_checked": self.situations_checked,
            "basis_messages": self.basis_messages,
            "failure_count": self.failure_count,
            "failures": [f.to_dict() for f in self.failures],
            "deadline_witnesses": self.deadline_witnesses,
            "wall_time": self.wall_time,
            "components": self.components,
            "invocation": self.invocation,
        }


def _params_dict(code) -> dict:
    if isinstance(code, CompositeCode):
        return {
            "composite": code.kind,
            "tv": code.tv,
            "tu": code.tu,
            "b": code.b,
            "n": code.n,
            "kv": code.kv,
            "ku": code.ku,
        }
    p = code.params
    return {"kind": code.kind, "tv": p.tv, "tu": p.tu, "b": p.b, "n": p.n, "kv": p.kv, "ku": p.ku}


def _basis_codewords(code: BlockCode) -> list[list[int]]:
    p = code.params
    words = []
    for r in range(p.kv + p.ku):
        v = [0] * p.kv
        u = [0] * p.ku
        if r < p.kv:
            v[r] = 1
        else:
            u[r - p.kv] = 1
        words.append(encode_block(code, v, u))
    return words


def _row_stream_index(code: BlockCode, row: int) -> tuple[str, int]:
    kv = code.params.kv
    return ("v", row) if row < kv else ("u", row - kv)


def _row_deadline(code: BlockCode, row: int) -> int:
    p = code.params
    delay = p.tv if row < p.kv else p.tu
    return min(row + delay, p.n - 1)


def _check_situation(
    code: BlockCode,
    codewords: list[list[int]],
    erased: frozenset,
    known_rows: frozenset,
) -> tuple[list[tuple[str, int, int, object]], list[tuple[str, int, int]]]:
    """Decode every basis message under one erasure situation.

    Returns (failures, witnesses); failures are (stream, index, deadline,
    actual) and witnesses (stream, index, deadline) for exact-deadline
    recoveries.
    """
    p = code.params
    known = {r: 0 for r in known_rows}
    failures = []
    witnesses = []
    for r in range(p.kv + p.ku):
        if r in known_rows:
            continue
        cw = codewords[r]
        cells = [
            None if pos in erased else (cw[pos], pos) for pos in range(p.n)
        ]
        v_res, u_res = decode_cells(code, cells, known)
        results = list(v_res) + list(u_res)
        for row in range(p.kv + p.ku):
            if row in known_rows:
                continue
            expected = 1 if row == r else 0
            value, when = results[row]
            deadline = _row_deadline(code, row)
            stream, idx = _row_stream_index(code, row)
            if value is None:
                failures.append((stream, idx, deadline, "unrecovered"))
            elif value != expected:
                failures.append((stream, idx, deadline, f"wrong_value:{value}"))
            elif when > deadline:
                failures.append((stream, idx, deadline, when))
            elif when == deadline and expected:
                witnesses.append((stream, idx, deadline))
    return failures, witnesses


def verify_block(code: BlockCode, b: int) -> VerificationReport:
    """Exhaustive block-level sweep: all burst placements x all basis messages."""
    start_time = time.perf_counter()
    p = code.params
    codewords = _basis_codewords(code)
    patterns = enumerate_bursts(p.n, b)
    failures: list[Failure] = []
    failure_count = 0
    witnesses: list[dict] = []
    for pattern in patterns:
        erased = frozenset(
            pos for pos in range(p.n) if pattern[pos]
        )
        fails, wits = _check_situation(code, codewords, erased, frozenset())
        for stream, idx, deadline, actual in fails:
            failure_count += 1
            if len(failures) < FAILURE_CAP:
                failures.append(
                    Failure(pattern.start, pattern.length, None, stream, idx, deadline, actual)
                )
        for stream, idx, deadline in wits[:1]:
            if len(witnesses) < 8:
                witnesses.append(
                    {
                        "burst_start": pattern.start,
                        "burst_len": pattern.length,
                        "stream": stream,
                        "index": idx,
                        "deadline": deadline,
                    }
                )
    return VerificationReport(
        params=_params_dict(code),
        burst=b,
        horizon=None,
        mode="block",
        patterns_checked=len(patterns),
        situations_checked=len(patterns),
        basis_messages=p.kv + p.ku,
        failures=failures,
        failure_count=failure_count,
        deadline_witnesses=witnesses,
        wall_time=time.perf_counter() - start_time,
    )


def default_horizon(code: BlockCode) -> int:
    return 2 * code.params.n + code.params.tv


def _verify_streaming_leaf(
    code: BlockCode, b: int, horizon: int | None, component: int | None = None
) -> VerificationReport:
    start_time = time.perf_counter()
    p = code.params
    k = p.kv + p.ku
    h = default_horizon(code) if horizon is None else horizon
    codewords = _basis_codewords(code)
    situations: dict[tuple[frozenset, frozenset], tuple[int, int]] = {}
    if b > 0:
        for s in range(h + 1):
            for m in range(s - p.n + 1, s + b):
                erased = frozenset(
                    pos for pos in range(p.n) if s <= m + pos < s + b
                )
                if not erased:
                    continue
                known_rows = frozenset(r for r in range(k) if m + r < 0)
                key = (erased, known_rows)
                if key not in situations:
                    situations[key] = (s, m)
    failures: list[Failure] = []
    failure_count = 0
    witnesses: list[dict] = []
    for (erased, known_rows), (s, m) in situations.items():
        fails, wits = _check_situation(code, codewords, erased, known_rows)
        for stream, idx, deadline, actual in fails:
            failure_count += 1
            if len(failures) < FAILURE_CAP:
                failures.append(
                    Failure(s, b, m, stream, idx, deadline, actual, component)
                )
        for stream, idx, deadline in wits[:1]:
            if len(witnesses) < 8:
                witnesses.append(
                    {
                        "burst_start": s,
                        "burst_len": b,
                        "diagonal": m,
                        "stream": stream,
                        "index": idx,
                        "deadline": deadline,
                        "component": component,
                    }
                )
    return VerificationReport(
        params=_params_dict(code),
        burst=b,
        horizon=h,
        mode="streaming",
        patterns_checked=h + 1,
        situations_checked=len(situations),
        basis_messages=k,
        failures=failures,
        failure_count=failure_count,
        deadline_witnesses=witnesses,
        wall_time=time.perf_counter() - start_time,
    )


def verify_code(code, b: int, horizon: int | None = None) -> VerificationReport:
    """Streaming burst sweep over all starts in [0, horizon].

    Composites are verified component-wise: whole slots are erased together,
    so a composite corrects a burst exactly when every distinct leaf does.
    """
    if b < 0:
        raise BurstmuxError(f"burst length must be non-negative, got {b}")
    if isinstance(code, BlockCode):
        return _verify_streaming_leaf(code, b, horizon)
    leaf_reports = [
        _verify_streaming_leaf(leaf, b, horizon, component=i)
        for i, leaf in enumerate(distinct_leaves(code))
    ]
    merged = VerificationReport(
        params=_params_dict(code),
        burst=b,
        horizon=leaf_reports[0].horizon if leaf_reports else horizon,
        mode="streaming",
        patterns_checked=sum(r.patterns_checked for r in leaf_reports),
        situations_checked=sum(r.situations_checked for r in leaf_reports),
        basis_messages=sum(r.basis_messages for r in leaf_reports),
        failures=[f for r in leaf_reports for f in r.failures][:FAILURE_CAP],
        failure_count=sum(r.failure_count for r in leaf_reports),
        deadline_witnesses=[w for r in leaf_reports for w in r.deadline_witnesses][:8],
        wall_time=sum(r.wall_time for r in leaf_reports),
        components=len(leaf_reports),
    )
    return merged
