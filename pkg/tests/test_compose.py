"""Concatenation and time-sharing: exact rate accounting and correction transfer."""

from fractions import Fraction

import pytest

from burstmux import (
    RegimeError,
    build_multiplexed,
    build_single_stream,
    concatenate,
    time_share,
    verify_code,
)
from burstmux.compose import code_dimensions, leaves, make_decoder, make_encoder
from burstmux.channel import ERASED


def test_concatenate_identity(gf256):
    code = build_multiplexed(4, 2, 1, gf256)
    assert concatenate(code, 1) is code


def test_concatenate_rates_preserved(gf256):
    code = build_multiplexed(5, 2, 2, gf256)
    for q in (2, 3):
        comp = concatenate(code, q)
        n, kv, ku = code_dimensions(comp)
        assert (n, kv, ku) == (q * 7, q * 3, q * 2)
        assert comp.rate_pair() == code.rate_pair()


def test_concatenate_rejects_bad_factor(gf256):
    with pytest.raises(RegimeError):
        concatenate(build_multiplexed(4, 2, 1, gf256), 0)


def test_time_share_corner_with_axis(gf256):
    """(4,2,1) corner (n=5, kv=2, ku=2) with the Tv-axis code (n=5, kv=4, ku=0)
    gives n=50, kv=30, ku=10: the midpoint (3/5, 1/5) of (2/5,2/5) and (4/5,0)."""
    corner = build_multiplexed(4, 2, 1, gf256)
    vaxis = build_single_stream(4, 1, gf256)
    ts = time_share(corner, vaxis)
    assert (ts.n, ts.kv, ts.ku) == (50, 30, 10)
    assert ts.rate_pair() == (Fraction(3, 5), Fraction(1, 5))
    assert (ts.tv, ts.tu, ts.b) == (4, 2, 1)


def test_time_share_with_itself_keeps_rates(gf256):
    a = build_multiplexed(4, 2, 1, gf256)
    ts = time_share(a, a)
    assert ts.rate_pair() == a.rate_pair()
    assert ts.n == 2 * 5 * 5


def test_time_share_midpoint_formula(gf256):
    a = build_multiplexed(6, 2, 1, gf256)
    b = build_single_stream(2, 1, gf256, stream="u")
    ts = time_share(a, b)
    ra, rb = a.rate_pair(), b.rate_pair()
    assert ts.rate_pair() == (
        ra[0] / 2 + rb[0] / 2,
        ra[1] / 2 + rb[1] / 2,
    )


def test_time_share_rejects_mismatched_params(gf256, gf2):
    a = build_multiplexed(4, 2, 1, gf256)
    with pytest.raises(RegimeError, match="mismatched delay"):
        time_share(a, build_multiplexed(5, 2, 1, gf256))
    with pytest.raises(RegimeError, match="mismatched delay"):
        time_share(a, build_single_stream(4, 2, gf256))
    with pytest.raises(RegimeError, match="field"):
        time_share(a, build_multiplexed(4, 2, 1, gf2))


def test_composite_passes_verify_sweep(gf256):
    corner = build_multiplexed(4, 2, 1, gf256)
    ts = time_share(corner, build_single_stream(4, 1, gf256))
    assert verify_code(ts, 1).passed
    assert verify_code(concatenate(corner, 3), 1).passed
    assert not verify_code(ts, 2).passed


def test_nested_composition_dimensions(gf256):
    corner = build_multiplexed(4, 2, 1, gf256)
    uaxis = build_single_stream(2, 1, gf256, stream="u")
    inner = time_share(corner, uaxis)  # n = 2*5*3 = 30
    outer = time_share(inner, corner)  # n = 2*30*5 = 300
    assert inner.n == 30 and outer.n == 300
    flat = leaves(outer)
    assert sum(c * leaf.params.n for leaf, c in flat) == 300


def test_composite_stream_round_trip(gf256):
    """End-to-end streaming of a composite through a burst."""
    import random

    corner = build_multiplexed(4, 2, 1, gf256)
    ts = time_share(corner, build_single_stream(4, 1, gf256))
    enc = make_encoder(ts)
    dec = make_decoder(ts)
    rng = random.Random(17)
    sources = [
        (
            tuple(rng.randrange(256) for _ in range(ts.kv)),
            tuple(rng.randrange(256) for _ in range(ts.ku)),
        )
        for _ in range(25)
    ]
    for i, (v, u) in enumerate(sources):
        pkt = enc.push(v, u)
        assert len(pkt) == ts.n
        est = dec.push(ERASED if i == 9 else pkt)
        if est.v is not None:
            assert est.v == sources[est.slot - ts.tv][0]
        if est.u is not None:
            assert est.u == sources[est.slot - ts.tu][1]
