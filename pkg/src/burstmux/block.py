"""Block codes: single-stream, superposition-multiplexed, and explicit.

A block code sends kv less-urgent symbols and ku urgent symbols in one
length-n codeword.  Row r of the generator corresponds to the symbol
injected at slot offset r of the diagonal interleave, so every generator
here is delay-respecting: G[r][c] == 0 for c < r.  That single property is
what lets the streaming layer reuse block decoding verbatim.

Deadlines follow the generation-time convention: the less-urgent symbol at
row i must be recovered by position min(i + Tv, n-1), and the urgent symbol
u[i] (row kv+i) by position min(kv + i + Tu, n-1).

Decoding is staged, mirroring the recoverability argument rather than one
global solve:

* single-stream (T, B): read the clean head/mid symbols, solve the erased
  mid symbols from the earliest strippable parity positions (an MDS system
  of size <= B), then peel each erased head symbol off its repetition copy
  in the tail.
* multiplexed: if the burst misses the first kv positions, recover v
  directly, rebuild the overlapped v-parity tail, strip it, and decode the
  urgent sub-code; otherwise the urgent sub-code is decoded from its
  interference-free positions alone, the recovered u symbols are stripped
  from the overlap, and the v sub-code is decoded last.
* explicit generators fall back to an incremental prefix solver that pins
  each symbol at the earliest position where it is determined.

A symbol's recovery time is the largest received-word index its solve
consumed (transitively, through any stripped intermediate).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .channel import ERASED
from .errors import DecodeError, InternalConsistencyError, RegimeError
from .field import GF, GF256, Matrix, ParityMatrix, mat_from_rows, mat_rank, mds_parity, solve_square, vec_mat_mul

SINGLE_STREAM = "single_stream"
MULTIPLEXED = "multiplexed"
EXPLICIT = "explicit"


@dataclass(frozen=True)
class CodeParams:
    """Delay/burst tuple with the derived block dimensions.

    tv/tu are the decoding delays of the less-urgent and urgent streams; a
    stream a code does not carry keeps a vacuous delay entry.
    """

    tv: int
    tu: int
    b: int
    n: int
    kv: int
    ku: int


@dataclass(frozen=True)
class DecodeSchedule:
    v_deadline: tuple[int, ...]
    u_deadline: tuple[int, ...]


@dataclass(frozen=True)
class BlockCode:
    params: CodeParams
    field: GF
    generator: Matrix
    kind: str
    v_parity: ParityMatrix | None = None
    u_parity: ParityMatrix | None = None

    def rate_pair(self) -> tuple[Fraction, Fraction]:
        p = self.params
        return Fraction(p.kv, p.n), Fraction(p.ku, p.n)

    def schedule(self) -> DecodeSchedule:
        p = self.params
        last = p.n - 1
        v = tuple(min(i + p.tv, last) for i in range(p.kv))
        u = tuple(min(p.kv + i + p.tu, last) for i in range(p.ku))
        return DecodeSchedule(v, u)


@dataclass(frozen=True)
class DecodeResult:
    """Per-symbol values and recovery times; None marks an unrecovered symbol."""

    v_values: tuple
    v_times: tuple
    u_values: tuple
    u_times: tuple

    def all_recovered(self) -> bool:
        return None not in self.v_values and None not in self.u_values


def _check_delay_respecting(generator: Matrix) -> None:
    for r, row in enumerate(generator):
        for c in range(min(r, len(row))):
            if row[c]:
                raise RegimeError(
                    f"generator row {r} has a nonzero entry at column {c}; "
                    "rows may only touch columns at or after their slot offset"
                )


def _check_full_rank(field: GF, generator: Matrix) -> None:
    if generator and mat_rank(field, generator) != len(generator):
        raise RegimeError("generator matrix does not have full row rank")


def build_single_stream(t: int, b: int, field: GF = GF256, stream: str = "v") -> BlockCode:
    """Rate-T/(T+B) block code correcting any length-B burst with delay T.

    Layout: [I_B 0 I_B ; 0 I_{T-B} P] with P the parity of a systematic MDS
    (T, T-B)-code, so the first B symbols repeat in the tail on top of the
    MDS parity of the middle.  `stream` selects which of the two message
    streams the code carries ("v" by default; "u" builds the urgent-axis
    code used in compositions).
    """
    if b < 1 or t < b:
        raise RegimeError(f"single-stream code needs T >= B >= 1, got T={t}, B={b}")
    parity = mds_parity(field, t - b, b)
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
    generator = mat_from_rows(rows)
    if stream == "v":
        params = CodeParams(tv=t, tu=0, b=b, n=n, kv=t, ku=0)
        code = BlockCode(params, field, generator, SINGLE_STREAM, v_parity=parity)
    elif stream == "u":
        params = CodeParams(tv=t, tu=t, b=b, n=n, kv=0, ku=t)
        code = BlockCode(params, field, generator, SINGLE_STREAM, u_parity=parity)
    else:
        raise RegimeError(f"stream must be 'v' or 'u', got {stream!r}")
    _check_delay_respecting(generator)
    return code


def build_multiplexed(tv: int, tu: int, b: int, field: GF = GF256) -> BlockCode:
    """Corner-point superposition code for Tv > Tu + B >= 2B.

    The less-urgent codeword (delay Tv-Tu, kv = Tv-Tu symbols) and the
    urgent codeword (delay Tu, ku = Tu symbols) overlap on exactly B
    positions: the v-parity tail is added onto the u-systematic head.
    Rates are exactly ((Tv-Tu)/(Tv+B), Tu/(Tv+B)).
    """
    if b < 1:
        raise RegimeError(f"burst length must be at least 1, got B={b}")
    if tu < b:
        raise RegimeError(
            f"Tu={tu} < B={b}: degenerate regime, the urgent stream cannot be carried"
        )
    if tv == tu:
        raise RegimeError(f"Tv=Tu={tv}: degenerate equal-delay regime, use a single-stream code")
    if tv < tu:
        raise RegimeError(f"need Tv >= Tu, got Tv={tv}, Tu={tu}")
    if tv <= tu + b:
        raise RegimeError(
            f"Tv={tv}, Tu={tu}, B={b} violates Tv > Tu + B; "
            "the interior regime is served by prior systematic constructions"
        )
    bound = max(tu, tv - tu)
    if field.order < bound:
        raise RegimeError(
            f"field size insufficient: construction needs |F| >= max(Tu, Tv-Tu) = {bound}, "
            f"got {field.order}"
        )
    kv = tv - tu
    ku = tu
    n = tv + b
    v_par = mds_parity(field, kv - b, b)
    u_par = mds_parity(field, tu - b, b)
    rows = []
    for r in range(kv):
        row = [0] * n
        row[r] = 1
        for j in range(b):
            if r < b:
                row[kv + j] = 1 if j == r else 0
            else:
                row[kv + j] = v_par.entries[r - b][j]
        rows.append(row)
    for r in range(ku):
        row = [0] * n
        if r < b:
            row[kv + r] = 1  # overlap carries the urgent systematic head
            row[kv + tu + r] = 1
        else:
            row[kv + r] = 1
            for j in range(b):
                row[kv + tu + j] = u_par.entries[r - b][j]
        rows.append(row)
    generator = mat_from_rows(rows)
    _check_delay_respecting(generator)
    _check_full_rank(field, generator)
    params = CodeParams(tv=tv, tu=tu, b=b, n=n, kv=kv, ku=ku)
    return BlockCode(params, field, generator, MULTIPLEXED, v_parity=v_par, u_parity=u_par)


def explicit_code(
    tv: int, tu: int, b: int, field: GF, generator, kv: int, ku: int
) -> BlockCode:
    """Wrap a hand-given generator matrix; decoded by the prefix solver."""
    gen = mat_from_rows(generator)
    if len(gen) != kv + ku:
        raise RegimeError(f"generator has {len(gen)} rows, expected kv+ku={kv + ku}")
    n = len(gen[0]) if gen else 0
    if any(len(row) != n for row in gen):
        raise RegimeError("generator rows have inconsistent lengths")
    for row in gen:
        for x in row:
            field.check(x)
    _check_delay_respecting(gen)
    _check_full_rank(field, gen)
    params = CodeParams(tv=tv, tu=tu, b=b, n=n, kv=kv, ku=ku)
    return BlockCode(params, field, gen, EXPLICIT)


def encode_block(code: BlockCode, v, u) -> list[int]:
    """Codeword [v u] G over the code's field."""
    p = code.params
    if len(v) != p.kv or len(u) != p.ku:
        raise RegimeError(
            f"message length mismatch: expected kv={p.kv}, ku={p.ku}, "
            f"got {len(v)}, {len(u)}"
        )
    msg = list(v) + list(u)
    return vec_mat_mul(code.field, msg, code.generator)


# ---------------------------------------------------------------------------
# Decoding engine.
#
# A received word is presented to the engine as "cells": one entry per
# codeword position, either None (erased or not yet received) or a pair
# (value, avail) where avail is the largest received-word index that was
# consumed to make the value available (the raw index for direct receptions,
# larger for stripped overlaps).  `known` carries message rows whose values
# are known a priori (the before-time-zero convention of the interleave),
# at availability -1.
# ---------------------------------------------------------------------------


def _decode_lemma2(field: GF, t: int, b: int, parity: ParityMatrix, cells, known):
    """Staged decode of the [I_B 0 I_B; 0 I P] layout; returns t (value, time) pairs."""
    resolved: dict[int, tuple[int, int]] = {}
    for row in range(t):
        if row in known:
            resolved[row] = (known[row], -1)
        elif cells[row] is not None:
            resolved[row] = cells[row]

    mid_rows = list(range(b, t))
    erased_mids = [m for m in mid_rows if m not in resolved]
    if erased_mids:
        equations = []
        for j in range(b):
            cell = cells[t + j]
            if cell is None or j not in resolved:
                continue
            head_val, head_time = resolved[j]
            rhs = field.sub(cell[0], head_val)
            time = max(cell[1], head_time)
            coeffs = []
            for m in erased_mids:
                coeffs.append(parity.entries[m - b][j])
            for m in mid_rows:
                if m in resolved:
                    coef = parity.entries[m - b][j]
                    if coef:
                        rhs = field.sub(rhs, field.mul(coef, resolved[m][0]))
                        time = max(time, resolved[m][1])
            equations.append((time, j, coeffs, rhs))
        equations.sort(key=lambda eq: (eq[0], eq[1]))
        if len(equations) >= len(erased_mids):
            used = equations[: len(erased_mids)]
            try:
                values = solve_square(
                    field, [eq[2] for eq in used], [eq[3] for eq in used]
                )
            except ZeroDivisionError:
                values = None
            if values is not None:
                solve_time = max(eq[0] for eq in used)
                for m, val in zip(erased_mids, values):
                    resolved[m] = (val, solve_time)

    for j in range(b):
        if j >= t or j in resolved:
            continue
        cell = cells[t + j]
        if cell is None:
            continue
        val = cell[0]
        time = cell[1]
        ok = True
        for m in mid_rows:
            coef = parity.entries[m - b][j]
            if not coef:
                continue
            if m not in resolved:
                ok = False
                break
            val = field.sub(val, field.mul(coef, resolved[m][0]))
            time = max(time, resolved[m][1])
        if ok:
            resolved[j] = (val, time)

    return [resolved.get(row, (None, None)) for row in range(t)]


def _decode_multiplexed(code: BlockCode, cells, known):
    p = code.params
    field = code.field
    kv, b = p.kv, p.b
    v_par = code.v_parity
    u_par = code.u_parity
    known_v = {r: val for r, val in known.items() if r < kv}
    known_u = {r - kv: val for r, val in known.items() if r >= kv}

    v_direct = all(r in known_v or cells[r] is not None for r in range(kv))

    if v_direct:
        v_res = []
        for r in range(kv):
            if r in known_v:
                v_res.append((known_v[r], -1))
            else:
                v_res.append(cells[r])
        # Rebuild the v-parity tail that overlaps the urgent head.
        tail = []
        for j in range(b):
            val, time = v_res[j]
            for m in range(b, kv):
                coef = v_par.entries[m - b][j]
                if coef:
                    val = field.add(val, field.mul(coef, v_res[m][0]))
                    time = max(time, v_res[m][1])
            tail.append((val, time))
        u_cells = []
        for pos in range(p.tu + b):
            cell = cells[kv + pos]
            if cell is None:
                u_cells.append(None)
            elif pos < b:
                u_cells.append(
                    (field.sub(cell[0], tail[pos][0]), max(cell[1], tail[pos][1]))
                )
            else:
                u_cells.append(cell)
        u_res = _decode_lemma2(field, p.tu, b, u_par, u_cells, known_u)
        return v_res, u_res

    # Burst touches the v-systematic region: the urgent codeword is decoded
    # from its interference-free positions alone, then stripped from the
    # overlap so the v codeword can be solved.
    u_cells = [None] * b
    for pos in range(b, p.tu + b):
        u_cells.append(cells[kv + pos])
    u_res = _decode_lemma2(field, p.tu, b, u_par, u_cells, known_u)

    v_cells = [cells[r] for r in range(kv)]
    for j in range(b):
        cell = cells[kv + j]
        if cell is None:
            v_cells.append(None)
            continue
        if j in known_u:
            u_val, u_time = known_u[j], -1
        else:
            u_val, u_time = u_res[j]
        if u_val is None:
            v_cells.append(None)
        else:
            v_cells.append((field.sub(cell[0], u_val), max(cell[1], u_time)))
    v_res = _decode_lemma2(field, kv, b, v_par, v_cells, known_v)
    return v_res, u_res


def _decode_prefix_solver(code: BlockCode, cells, known):
    """Pin each message row at the earliest availability where it is determined."""
    field = code.field
    k = len(code.generator)
    rows: list[tuple[list[int], int]] = []  # reduced equations (coeffs, rhs)
    pivots: dict[int, int] = {}
    pinned: dict[int, tuple[int, int]] = {}

    def insert(coeffs: list[int], rhs: int, time: int) -> None:
        coeffs = list(coeffs)
        for col, ridx in pivots.items():
            if coeffs[col]:
                factor = coeffs[col]
                rrow, rrhs = rows[ridx]
                for j in range(k):
                    if rrow[j]:
                        coeffs[j] = field.sub(coeffs[j], field.mul(factor, rrow[j]))
                rhs = field.sub(rhs, field.mul(factor, rrhs))
        lead = next((j for j in range(k) if coeffs[j]), None)
        if lead is None:
            return
        inv = field.inv(coeffs[lead])
        coeffs = [field.mul(inv, x) for x in coeffs]
        rhs = field.mul(inv, rhs)
        for ridx, (rrow, rrhs) in enumerate(rows):
            if rrow[lead]:
                factor = rrow[lead]
                for j in range(k):
                    if coeffs[j]:
                        rrow[j] = field.sub(rrow[j], field.mul(factor, coeffs[j]))
                rows[ridx] = (rrow, field.sub(rrhs, field.mul(factor, rhs)))
        rows.append((coeffs, rhs))
        pivots[lead] = len(rows) - 1
        for col, ridx in pivots.items():
            if col in pinned:
                continue
            rrow, rrhs = rows[ridx]
            if sum(1 for x in rrow if x) == 1:
                pinned[col] = (rrhs, time)

    for row, val in known.items():
        unit = [0] * k
        unit[row] = 1
        insert(unit, val, -1)
    order = sorted(
        (cell[1], pos) for pos, cell in enumerate(cells) if cell is not None
    )
    for time, pos in order:
        insert([code.generator[r][pos] for r in range(k)], cells[pos][0], time)

    return [pinned.get(r, (None, None)) for r in range(k)]


def decode_cells(code: BlockCode, cells, known=None):
    """Best-effort decode; returns (v results, u results) lists of (value, time)."""
    known = known or {}
    p = code.params
    if code.kind == MULTIPLEXED:
        return _decode_multiplexed(code, cells, known)
    if code.kind == SINGLE_STREAM:
        if p.ku == 0:
            res = _decode_lemma2(code.field, p.kv, p.b, code.v_parity, cells, known)
            return res, []
        res = _decode_lemma2(code.field, p.ku, p.b, code.u_parity, cells, known)
        return [], res
    full = _decode_prefix_solver(code, cells, known)
    return full[: p.kv], full[p.kv :]


def _cells_from_word(code: BlockCode, word) -> list:
    p = code.params
    if len(word) != p.n:
        raise DecodeError(f"received word has {len(word)} symbols, expected n={p.n}")
    cells = []
    for i, sym in enumerate(word):
        if sym is ERASED or sym is None:
            cells.append(None)
        else:
            cells.append((code.field.check(sym), i))
    return cells


def _erasures_in_tolerance(word, b: int) -> bool:
    runs = []
    current = 0
    for sym in word:
        if sym is ERASED or sym is None:
            current += 1
        elif current:
            runs.append(current)
            current = 0
    if current:
        runs.append(current)
    return not runs or (len(runs) == 1 and runs[0] <= b)


def decode_block(code: BlockCode, word, *, strict: bool = True) -> DecodeResult:
    """Recover both message vectors from a received word with erasures.

    In strict mode the erasures must form a single burst no longer than the
    code's design tolerance, and every symbol is guaranteed recovered; a
    miss there indicates a broken code and raises.  Pass strict=False to
    decode best-effort, leaving unrecoverable symbols as None.
    """
    if strict and not _erasures_in_tolerance(word, code.params.b):
        raise DecodeError(
            f"erasure pattern beyond design tolerance: expected a single burst of "
            f"length <= {code.params.b}"
        )
    cells = _cells_from_word(code, word)
    v_res, u_res = decode_cells(code, cells)
    result = DecodeResult(
        v_values=tuple(val for val, _ in v_res),
        v_times=tuple(t for _, t in v_res),
        u_values=tuple(val for val, _ in u_res),
        u_times=tuple(t for _, t in u_res),
    )
    if strict and not result.all_recovered():
        raise InternalConsistencyError(
            "decode failed on an in-tolerance pattern; the code is not valid"
        )
    return result
