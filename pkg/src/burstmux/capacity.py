"""Closed-form capacity computations, all in exact rationals.

The single-stream capacity is C(T, B) = T/(T+B).  For two multiplexed
streams with delays Tv >= Tu and burst tolerance B, the achievable rate
pairs (Rv, Ru) form a convex polygon whose shape depends on the regime:

* main case, Tv > Tu + B:      Rv + Ru/C(Tu,B) <= 1  and  Rv + Ru <= C(Tv,B)
* interior case, Tu < Tv <= Tu+B:
      (1 + (Tu+B-Tv)/Tu) Rv + Ru/C(Tu,B) <= 1  and  Rv + Ru <= C(Tv,B)
* Tu < B:  the urgent stream cannot survive a burst; segment [0, C(Tv,B)]
  on the Rv axis.
* Tu = Tv: one effective stream; simplex Rv + Ru <= C(Tu,B).

Floating point never enters: corner-point identities are asserted exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import RegimeError

MAIN_CASE = "main_case"
INTERIOR_CASE = "interior_case"
DEGENERATE_SINGLE = "degenerate_single"


@dataclass(frozen=True)
class RatePair:
    rv: Fraction
    ru: Fraction

    def __post_init__(self) -> None:
        if not (0 <= self.rv <= 1 and 0 <= self.ru <= 1):
            raise RegimeError(f"rates must lie in [0, 1], got ({self.rv}, {self.ru})")

    def as_tuple(self) -> tuple[Fraction, Fraction]:
        return self.rv, self.ru


@dataclass(frozen=True)
class HalfPlane:
    """Constraint a*Rv + b*Ru <= c."""

    a: Fraction
    b: Fraction
    c: Fraction

    def slack(self, p: RatePair) -> Fraction:
        return self.c - (self.a * p.rv + self.b * p.ru)


@dataclass(frozen=True)
class Containment:
    contained: bool
    slacks: tuple[Fraction, ...]

    def __bool__(self) -> bool:
        return self.contained


@dataclass(frozen=True)
class CapacityRegion:
    tv: int
    tu: int
    b: int
    case_tag: str
    constraints: tuple[HalfPlane, ...]
    vertices: tuple[tuple[Fraction, Fraction], ...]

    def contains(self, p: RatePair) -> Containment:
        slacks = tuple(h.slack(p) for h in self.constraints)
        inside = p.rv >= 0 and p.ru >= 0 and all(s >= 0 for s in slacks)
        return Containment(inside, slacks)


def c_single(t: int, b: int) -> Fraction:
    """Single-stream capacity T/(T+B) of delay-T burst-B streaming codes."""
    if t < b or b < 0 or (t == 0 and b == 0):
        raise RegimeError(f"need T >= B >= 0 and not both zero, got T={t}, B={b}")
    return Fraction(t, t + b)


def corner(tv: int, tu: int, b: int) -> RatePair:
    """The non-trivial vertex ((Tv-Tu)/(Tv+B), Tu/(Tv+B)) of the main case."""
    if not (tv > tu + b and tu >= b >= 1):
        raise RegimeError(
            f"corner point requires Tv > Tu + B and Tu >= B >= 1, got ({tv}, {tu}, {b})"
        )
    return RatePair(Fraction(tv - tu, tv + b), Fraction(tu, tv + b))


def _intersect(h1: HalfPlane, h2: HalfPlane) -> tuple[Fraction, Fraction] | None:
    det = h1.a * h2.b - h2.a * h1.b
    if det == 0:
        return None
    rv = (h1.c * h2.b - h2.c * h1.b) / det
    ru = (h1.a * h2.c - h2.a * h1.c) / det
    return rv, ru


def _polygon(constraints: tuple[HalfPlane, ...]) -> tuple[tuple[Fraction, Fraction], ...]:
    """Vertices of {constraints, Rv >= 0, Ru >= 0}, counter-clockwise from the origin."""
    axes = (
        HalfPlane(Fraction(-1), Fraction(0), Fraction(0)),  # Rv >= 0
        HalfPlane(Fraction(0), Fraction(-1), Fraction(0)),  # Ru >= 0
    )
    all_h = list(constraints) + list(axes)
    points: set[tuple[Fraction, Fraction]] = set()
    for i in range(len(all_h)):
        for j in range(i + 1, len(all_h)):
            pt = _intersect(all_h[i], all_h[j])
            if pt is None:
                continue
            rv, ru = pt
            if rv < 0 or ru < 0:
                continue
            if all(h.a * rv + h.b * ru <= h.c for h in all_h):
                points.add((rv, ru))
    pts = sorted(points)
    if len(pts) <= 2:
        return tuple(pts)
    # Monotone-chain hull on exact rationals.
    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for pt in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    upper: list = []
    for pt in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    hull = lower[:-1] + upper[:-1]
    origin = (Fraction(0), Fraction(0))
    if origin in hull:
        k = hull.index(origin)
        hull = hull[k:] + hull[:k]
    return tuple(hull)


def region(tv: int, tu: int, b: int) -> CapacityRegion:
    """Capacity region polygon for the given delays and burst tolerance."""
    if tv < tu or tu < 0 or b < 0:
        raise RegimeError(f"need Tv >= Tu >= 0 and B >= 0, got ({tv}, {tu}, {b})")
    if tv < b:
        raise RegimeError(
            f"invalid regime: Tv={tv} < B={b}, a burst erases every packet before "
            "either deadline; no rate pair is achievable"
        )
    zero = Fraction(0)
    one = Fraction(1)
    if tu < b:
        cv = c_single(tv, b)
        constraints = (
            HalfPlane(zero, one, zero),  # Ru <= 0
            HalfPlane(one, one, cv),
        )
        vertices = ((zero, zero), (cv, zero))
        return CapacityRegion(tv, tu, b, DEGENERATE_SINGLE, constraints, vertices)
    if tu == tv:
        cu = c_single(tu, b)
        constraints = (HalfPlane(one, one, cu),)
        vertices = ((zero, zero), (cu, zero), (zero, cu))
        return CapacityRegion(tv, tu, b, DEGENERATE_SINGLE, constraints, vertices)
    cu = c_single(tu, b)
    cv = c_single(tv, b)
    if tv > tu + b:
        first = HalfPlane(one, 1 / cu, one)
        tag = MAIN_CASE
    else:
        first = HalfPlane(one + Fraction(tu + b - tv, tu), 1 / cu, one)
        tag = INTERIOR_CASE
    constraints = (first, HalfPlane(one, one, cv))
    return CapacityRegion(tv, tu, b, tag, constraints, _polygon(constraints))


def contains(reg: CapacityRegion, p: RatePair) -> Containment:
    return reg.contains(p)
