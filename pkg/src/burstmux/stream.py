"""Diagonal interleaving: lifting a block code to a streaming code.

The codeword fed with the source symbols of slot window [m, m+n-1] is laid
out along a diagonal: its position L is transmitted inside the slot-(m+L)
packet at lane L.  Because every generator is delay-respecting (row r only
touches columns >= r), each packet depends only on current and past
sources.  Sources at slots before 0 are the all-zero convention, and the
corresponding virtual packet symbols are known zeros on the decode side.

If the inner block code corrects every in-window burst of length <= B, the
streaming code corrects every B-burst on the unbounded timeline: a slot
burst meets each diagonal as the same in-window burst, and an in-window
recovery by position t means a streaming recovery by slot m+t, which is the
stream deadline.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .block import BlockCode, decode_cells
from .channel import ERASED
from .errors import BurstmuxError


class _Unrecovered:
    __slots__ = ()

    def __repr__(self) -> str:
        return "unrecovered"


#: Emission mark for a symbol the decoder could not pin by its deadline.
UNRECOVERED = _Unrecovered()


@dataclass(frozen=True)
class EmittedEstimates:
    """Per-slot decoder output: the estimates that fall due at this slot.

    v is the estimate of the less-urgent packet generated Tv slots ago and
    u the urgent packet generated Tu slots ago; each is None while the
    corresponding source slot would be negative.
    """

    slot: int
    v: tuple | None
    u: tuple | None


class StreamEncoder:
    """Sequential state machine; feed exactly one source pair per slot."""

    def __init__(self, code: BlockCode) -> None:
        self.code = code
        self._clock = 0
        n = code.params.n
        self._future = deque([[0] * n for _ in range(n)])

    @property
    def clock(self) -> int:
        return self._clock

    def push(self, v, u) -> list[int]:
        code = self.code
        p = code.params
        field = code.field
        if len(v) != p.kv or len(u) != p.ku:
            raise BurstmuxError(
                f"source pair lengths must be (kv={p.kv}, ku={p.ku}), got "
                f"({len(v)}, {len(u)})"
            )
        msg = list(v) + list(u)
        future = self._future
        for r, val in enumerate(msg):
            if not val:
                continue
            field.check(val)
            row = code.generator[r]
            for c in range(r, p.n):
                g = row[c]
                if g:
                    bucket = future[c - r]
                    bucket[c] = field.add(bucket[c], field.mul(g, val))
        packet = future.popleft()
        future.append([0] * p.n)
        self._clock += 1
        return packet


class StreamDecoder:
    """Per-diagonal decoder; feed one received packet (or ERASED) per slot."""

    def __init__(self, code: BlockCode) -> None:
        self.code = code
        self._clock = 0
        self._diagonals: dict[int, list] = {}
        self._known: dict[int, dict[int, int]] = {}
        self._cache: dict[tuple[int, int], tuple] = {}

    @property
    def clock(self) -> int:
        return self._clock

    def _diagonal(self, m: int) -> list:
        cells = self._diagonals.get(m)
        if cells is None:
            n = self.code.params.n
            cells = [None] * n
            if m < 0:
                # Positions transmitted before slot 0 never existed; their
                # symbols are the known zeros of the warm-up convention.
                for pos in range(min(-m, n)):
                    cells[pos] = (0, pos)
            self._diagonals[m] = cells
            if m < 0:
                self._known[m] = {r: 0 for r in range(min(-m, len(self.code.generator)))}
        return cells

    def _decode_at(self, m: int, prefix: int):
        key = (m, prefix)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        cells = self._diagonal(m)
        masked = [
            cell if cell is not None and pos <= prefix else None
            for pos, cell in enumerate(cells)
        ]
        result = decode_cells(self.code, masked, self._known.get(m, {}))
        self._cache[key] = result
        return result

    def push(self, packet) -> EmittedEstimates:
        code = self.code
        p = code.params
        i = self._clock
        for lane in range(p.n):
            cells = self._diagonal(i - lane)
            if packet is ERASED:
                cells[lane] = None
            else:
                if len(packet) != p.n:
                    raise BurstmuxError(
                        f"packet has {len(packet)} symbols, expected n={p.n}"
                    )
                cells[lane] = (packet[lane], lane)

        v_est = None
        if i >= p.tv and p.kv:
            j = i - p.tv
            vals = []
            for lane in range(p.kv):
                m = j - lane
                v_res, _ = self._decode_at(m, i - m)
                val = v_res[lane][0]
                vals.append(UNRECOVERED if val is None else val)
            v_est = tuple(vals)
        elif i >= p.tv:
            v_est = ()

        u_est = None
        if i >= p.tu and p.ku:
            j = i - p.tu
            vals = []
            for r in range(p.ku):
                m = j - p.kv - r
                _, u_res = self._decode_at(m, i - m)
                val = u_res[r][0]
                vals.append(UNRECOVERED if val is None else val)
            u_est = tuple(vals)
        elif i >= p.tu:
            u_est = ()

        self._clock += 1
        self._collect(i)
        return EmittedEstimates(slot=i, v=v_est, u=u_est)

    def _collect(self, i: int) -> None:
        horizon = i - 2 * self.code.params.n - max(self.code.params.tv, self.code.params.tu)
        stale = [m for m in self._diagonals if m < horizon]
        for m in stale:
            del self._diagonals[m]
            self._known.pop(m, None)
        if stale:
            self._cache = {k: v for k, v in self._cache.items() if k[0] >= horizon}


@dataclass
class StreamingCode:
    """A block code lifted to the slot timeline: paired encoder/decoder state."""

    inner: BlockCode
    encoder: StreamEncoder
    decoder: StreamDecoder

    def encode(self, v, u) -> list[int]:
        return self.encoder.push(v, u)

    def decode(self, packet) -> EmittedEstimates:
        return self.decoder.push(packet)


def to_streaming(inner: BlockCode) -> StreamingCode:
    return StreamingCode(inner, StreamEncoder(inner), StreamDecoder(inner))


def lane_terms(code: BlockCode) -> list[list[tuple[str, int, int, int]]]:
    """Symbolic expansion of each lane of the slot-t packet.

    Lane L of the packet sent at slot t is a sum of terms
    (stream, offset, index, coeff) meaning coeff * v_{t+offset}[index] (or
    u_...); offsets are never positive, which is the causality of the
    interleave made visible.
    """
    p = code.params
    lanes: list[list[tuple[str, int, int, int]]] = []
    for lane in range(p.n):
        terms = []
        for r in range(p.kv + p.ku):
            coeff = code.generator[r][lane]
            if not coeff:
                continue
            if r < p.kv:
                terms.append(("v", r - lane, r, coeff))
            else:
                terms.append(("u", r - lane, r - p.kv, coeff))
        lanes.append(terms)
    return lanes


def symbol_width(order: int) -> int:
    return 2 if order <= 256 else 4


def format_packet(order: int, packet) -> str:
    """One line per slot: hex symbols separated by spaces, or '*' if erased."""
    if packet is ERASED:
        return "*"
    w = symbol_width(order)
    return " ".join(format(x, f"0{w}x") for x in packet)


def parse_packet(line: str, n: int):
    line = line.strip()
    if line == "*":
        return ERASED
    parts = line.split()
    if len(parts) != n:
        raise BurstmuxError(f"expected {n} symbols per line, got {len(parts)}")
    return [int(x, 16) for x in parts]
