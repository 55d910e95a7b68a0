"""Code composition: per-slot concatenation and rate time-sharing.

Both operations run independent instances of existing codes side by side
and concatenate their slot packets, so burst correction carries over
unchanged and rates combine exactly:

* concatenate(code, q): q instances, rates unchanged.
* time_share(a, b): n_b instances of a next to n_a instances of b; the
  composite rate pair is the midpoint of the component rate pairs.

Composites are kept as composition trees (never flattened generators) so
rate accounting stays exact and descriptors round-trip losslessly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .block import BlockCode
from .channel import ERASED
from .errors import RegimeError
from .field import GF
from .stream import EmittedEstimates, StreamDecoder, StreamEncoder, UNRECOVERED

CONCATENATED = "concatenated"
TIME_SHARE = "time_share"


@dataclass(frozen=True)
class CompositeCode:
    """Composition node; children are BlockCodes or further composites."""

    kind: str
    children: tuple
    copies: tuple[int, ...]

    @property
    def field(self) -> GF:
        return self.children[0].field

    @property
    def n(self) -> int:
        return sum(c * child_n(ch) for ch, c in zip(self.children, self.copies))

    @property
    def kv(self) -> int:
        return sum(c * child_kv(ch) for ch, c in zip(self.children, self.copies))

    @property
    def ku(self) -> int:
        return sum(c * child_ku(ch) for ch, c in zip(self.children, self.copies))

    @property
    def tv(self) -> int:
        return _merged_delays(self.children)[0]

    @property
    def tu(self) -> int:
        return _merged_delays(self.children)[1]

    @property
    def b(self) -> int:
        return child_b(self.children[0])

    def rate_pair(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.kv, self.n), Fraction(self.ku, self.n)


def child_n(code) -> int:
    return code.params.n if isinstance(code, BlockCode) else code.n


def child_kv(code) -> int:
    return code.params.kv if isinstance(code, BlockCode) else code.kv


def child_ku(code) -> int:
    return code.params.ku if isinstance(code, BlockCode) else code.ku


def child_b(code) -> int:
    return code.params.b if isinstance(code, BlockCode) else code.b


def _delays(code) -> tuple[int | None, int | None]:
    """Delays of the streams a code actually carries; None when vacuous."""
    if isinstance(code, BlockCode):
        tv = code.params.tv if code.params.kv else None
        tu = code.params.tu if code.params.ku else None
        return tv, tu
    return (code.tv if code.kv else None), (code.tu if code.ku else None)


def _merged_delays(codes) -> tuple[int, int]:
    tv = None
    tu = None
    for code in codes:
        ctv, ctu = _delays(code)
        if ctv is not None:
            tv = ctv if tv is None else tv
        if ctu is not None:
            tu = ctu if tu is None else tu
    return (tv if tv is not None else 0), (tu if tu is not None else 0)


def _check_compatible(a, b) -> None:
    if a.field != b.field:
        raise RegimeError("time-shared codes must share a field")
    if child_b(a) != child_b(b):
        raise RegimeError(
            f"mismatched delay parameters: burst tolerances {child_b(a)} != {child_b(b)}"
        )
    atv, atu = _delays(a)
    btv, btu = _delays(b)
    if atv is not None and btv is not None and atv != btv:
        raise RegimeError(f"mismatched delay parameters: Tv {atv} != {btv}")
    if atu is not None and btu is not None and atu != btu:
        raise RegimeError(f"mismatched delay parameters: Tu {atu} != {btu}")


def concatenate(code, q: int):
    """q independent instances with per-slot packet concatenation."""
    if q < 1:
        raise RegimeError(f"concatenation factor must be >= 1, got {q}")
    if q == 1:
        return code
    return CompositeCode(CONCATENATED, (code,), (q,))


def time_share(a, b) -> CompositeCode:
    """Midpoint composition: n_b copies of a next to n_a copies of b."""
    _check_compatible(a, b)
    return CompositeCode(TIME_SHARE, (a, b), (child_n(b), child_n(a)))


def leaves(code) -> list[tuple[BlockCode, int]]:
    """Flatten to (leaf, copies) in packet layout order."""
    if isinstance(code, BlockCode):
        return [(code, 1)]
    out: list[tuple[BlockCode, int]] = []
    for child, copies in zip(code.children, code.copies):
        for leaf, inner in leaves(child):
            out.append((leaf, inner * copies))
    return out


def distinct_leaves(code) -> list[BlockCode]:
    seen = []
    for leaf, _ in leaves(code):
        if not any(leaf is s or leaf == s for s in seen):
            seen.append(leaf)
    return seen


class CompositeStreamEncoder:
    """Runs one StreamEncoder per leaf instance; packets are concatenated."""

    def __init__(self, code: CompositeCode) -> None:
        self.code = code
        self._units = []
        for leaf, copies in leaves(code):
            for _ in range(copies):
                self._units.append(StreamEncoder(leaf))

    def push(self, v, u) -> list[int]:
        vo = uo = 0
        packet: list[int] = []
        for enc in self._units:
            p = enc.code.params
            packet.extend(enc.push(v[vo : vo + p.kv], u[uo : uo + p.ku]))
            vo += p.kv
            uo += p.ku
        return packet


class CompositeStreamDecoder:
    def __init__(self, code: CompositeCode) -> None:
        self.code = code
        self._units = []
        offset = 0
        for leaf, copies in leaves(code):
            for _ in range(copies):
                self._units.append((offset, StreamDecoder(leaf)))
                offset += leaf.params.n
        self._clock = 0

    def push(self, packet) -> EmittedEstimates:
        i = self._clock
        # Streams fall due by the composite's carried delays; compatibility
        # ensures every carrying unit emits at exactly that moment.
        v_due = i >= self.code.tv
        u_due = i >= self.code.tu
        v_parts: list = []
        u_parts: list = []
        for offset, dec in self._units:
            n = dec.code.params.n
            piece = ERASED if packet is ERASED else packet[offset : offset + n]
            est = dec.push(piece)
            if v_due and dec.code.params.kv:
                v_parts.extend(est.v)
            if u_due and dec.code.params.ku:
                u_parts.extend(est.u)
        self._clock += 1
        return EmittedEstimates(
            slot=i,
            v=tuple(v_parts) if v_due else None,
            u=tuple(u_parts) if u_due else None,
        )


def make_encoder(code):
    if isinstance(code, BlockCode):
        return StreamEncoder(code)
    return CompositeStreamEncoder(code)


def make_decoder(code):
    if isinstance(code, BlockCode):
        return StreamDecoder(code)
    return CompositeStreamDecoder(code)


def code_dimensions(code) -> tuple[int, int, int]:
    """(n, kv, ku) for either a leaf or a composite."""
    return child_n(code), child_kv(code), child_ku(code)
