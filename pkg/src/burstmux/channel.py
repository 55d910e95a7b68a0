"""Erasure patterns and the packet-erasure channel map.

A pattern is a lazy evaluator over an unbounded slot timeline: `pattern[i]`
is 1 when the slot-i packet is erased and 0 when it is delivered intact.
Only call sites materialise finite windows.  The channel never corrupts a
symbol; it either passes it through or replaces the whole packet with the
erasure mark.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BurstmuxError


class _Erased:
    __slots__ = ()

    def __repr__(self) -> str:
        return "*"


#: Singleton erasure mark used in received words and stream I/O.
ERASED = _Erased()


def apply(x, e: int):
    """Channel map: pass x through when e == 0, erase it when e == 1."""
    return ERASED if e else x


class ErasurePattern:
    """Base class; subclasses implement __getitem__ on slot indices."""

    kind = "abstract"

    def __getitem__(self, i: int) -> int:
        raise NotImplementedError

    def window(self, start: int, stop: int) -> list[int]:
        return [self[i] for i in range(start, stop)]

    def erased_slots(self, start: int, stop: int) -> list[int]:
        """Slot indices in [start, stop) whose packets are erased."""
        return [i for i in range(start, stop) if self[i]]

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Burst(ErasurePattern):
    """Exactly `length` consecutive erasures starting at `start`."""

    start: int
    length: int
    kind = "burst"

    def __post_init__(self) -> None:
        if self.length < 0:
            raise BurstmuxError("burst length must be non-negative")

    def __getitem__(self, i: int) -> int:
        return 1 if self.start <= i < self.start + self.length else 0

    def describe(self) -> str:
        return f"burst:{self.start},{self.length}"


@dataclass(frozen=True)
class Periodic(ErasurePattern):
    """Period tu+b: a length-b erasure burst then tu clear slots, offset delta."""

    delta: int
    tu: int
    b: int
    kind = "periodic"

    def __post_init__(self) -> None:
        period = self.tu + self.b
        if period <= 0:
            raise BurstmuxError("periodic pattern needs tu + b >= 1")
        if not 0 <= self.delta < period:
            raise BurstmuxError(f"offset must be in [0, {period}), got {self.delta}")

    def __getitem__(self, i: int) -> int:
        return 1 if (i - self.delta) % (self.tu + self.b) < self.b else 0

    def describe(self) -> str:
        return f"periodic:{self.delta},{self.tu},{self.b}"


@dataclass(frozen=True)
class Explicit(ErasurePattern):
    """Finite bitmap; slots beyond the trace are noiseless."""

    bits: tuple[int, ...]
    kind = "explicit"

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.bits):
            return self.bits[i]
        return 0

    def describe(self) -> str:
        return f"explicit:len={len(self.bits)}"


@dataclass
class GilbertElliott(ErasurePattern):
    """Two-state Markov erasure process, deterministic under the seed.

    Good state delivers, bad state erases; starts good.  Slots are generated
    in order and memoised so indexing is reproducible regardless of access
    pattern.  PRNG: Python's Mersenne Twister.
    """

    p_good_to_bad: float
    p_bad_to_good: float
    seed: int
    kind = "gilbert_elliott"
    _rng: random.Random = field(init=False, repr=False)
    _bits: list[int] = field(init=False, repr=False)
    _bad: bool = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not (0.0 <= self.p_good_to_bad <= 1.0 and 0.0 <= self.p_bad_to_good <= 1.0):
            raise BurstmuxError("transition probabilities must be in [0, 1]")
        self._rng = random.Random(self.seed)
        self._bits = []
        self._bad = False

    def __getitem__(self, i: int) -> int:
        if i < 0:
            return 0
        while len(self._bits) <= i:
            if self._bad:
                if self._rng.random() < self.p_bad_to_good:
                    self._bad = False
            else:
                if self._rng.random() < self.p_good_to_bad:
                    self._bad = True
            self._bits.append(1 if self._bad else 0)
        return self._bits[i]

    def describe(self) -> str:
        return f"ge:{self.p_good_to_bad},{self.p_bad_to_good},{self.seed}"

    def metadata(self) -> dict:
        return {
            "prng": "mt19937",
            "seed": self.seed,
            "p_good_to_bad": self.p_good_to_bad,
            "p_bad_to_good": self.p_bad_to_good,
        }


def enumerate_bursts(n: int, b: int) -> list[Burst]:
    """All n-b+1 placements of a length-b burst inside a length-n window."""
    if n < b or b < 0:
        raise BurstmuxError(f"need n >= b >= 0, got n={n}, b={b}")
    if b == 0:
        return [Burst(0, 0)]
    return [Burst(s, b) for s in range(n - b + 1)]


def periodic(delta: int, tu: int, b: int) -> Periodic:
    return Periodic(delta, tu, b)


def gilbert_elliott(p_good_to_bad: float, p_bad_to_good: float, seed: int) -> GilbertElliott:
    return GilbertElliott(p_good_to_bad, p_bad_to_good, seed)


def load_trace(path: str | Path) -> Explicit:
    """Trace file: one ASCII bit per slot; newlines and spaces are ignored."""
    text = Path(path).read_text()
    bits = []
    for ch in text:
        if ch in "01":
            bits.append(int(ch))
        elif ch.isspace():
            continue
        else:
            raise BurstmuxError(f"invalid trace character {ch!r}")
    return Explicit(tuple(bits))


def parse_pattern(spec: str) -> ErasurePattern:
    """Parse the CLI pattern syntax.

    Accepted forms: `burst:<start>,<len>`, `periodic:<delta>,<tu>,<b>`,
    `trace:<path>`, `ge:<p>,<q>,<seed>`.
    """
    head, sep, rest = spec.partition(":")
    if not sep:
        raise BurstmuxError(f"malformed pattern spec {spec!r}")
    try:
        if head == "burst":
            start, length = (int(x) for x in rest.split(","))
            return Burst(start, length)
        if head == "periodic":
            delta, tu, b = (int(x) for x in rest.split(","))
            return Periodic(delta, tu, b)
        if head == "trace":
            return load_trace(rest)
        if head == "ge":
            p, q, seed = rest.split(",")
            return GilbertElliott(float(p), float(q), int(seed))
    except BurstmuxError:
        raise
    except (ValueError, OSError) as exc:
        raise BurstmuxError(f"malformed pattern spec {spec!r}: {exc}") from exc
    raise BurstmuxError(f"unknown pattern kind {head!r}")


def is_single_burst_within(pattern_bits: list[int], b: int) -> bool:
    """True when the bits contain at most one run of 1s, of length <= b."""
    runs = []
    current = 0
    for bit in pattern_bits:
        if bit:
            current += 1
        elif current:
            runs.append(current)
            current = 0
    if current:
        runs.append(current)
    if not runs:
        return True
    return len(runs) == 1 and runs[0] <= b
