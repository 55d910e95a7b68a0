"""End-to-end simulation runs and their reports."""

from burstmux import build_multiplexed, build_single_stream, parse_pattern, simulate, time_share
from burstmux.channel import Explicit


def test_simulate_burst_within_tolerance(gf256):
    code = build_multiplexed(4, 2, 1, gf256)
    rep = simulate(code, parse_pattern("burst:10,1"), 100, seed=1)
    assert rep.within_contract
    assert rep.v.to_dict() == {"recovered": 100, "unrecovered": 0, "deadline_miss": 0}
    assert rep.u.to_dict() == {"recovered": 100, "unrecovered": 0, "deadline_miss": 0}


def test_simulate_periodic_discloses_contract(gf256):
    code = build_multiplexed(4, 2, 1, gf256)
    rep = simulate(code, parse_pattern("periodic:0,2,1"), 100, seed=2)
    assert not rep.within_contract
    assert any("single-burst contract" in note for note in rep.notes)
    assert rep.v.recovered + rep.v.unrecovered == 100
    assert rep.u.recovered + rep.u.unrecovered == 100


def test_simulate_all_clear_trace(gf256):
    code = build_multiplexed(4, 2, 1, gf256)
    rep = simulate(code, Explicit((0,) * 200), 60, seed=3)
    assert rep.v.recovered == 60 and rep.u.recovered == 60


def test_simulate_deterministic_under_seed(gf256):
    code = build_multiplexed(5, 2, 1, gf256)
    pat = parse_pattern("ge:0.2,0.5,9")
    a = simulate(code, pat, 80, seed=4).to_dict()
    b = simulate(code, parse_pattern("ge:0.2,0.5,9"), 80, seed=4).to_dict()
    a.pop("invocation"), b.pop("invocation")
    assert a == b


def test_simulate_counts_sum_to_slots(gf256):
    code = build_multiplexed(4, 2, 1, gf256)
    rep = simulate(code, parse_pattern("ge:0.3,0.3,11"), 70, seed=5)
    assert rep.v.recovered + rep.v.unrecovered == 70
    assert rep.u.recovered + rep.u.unrecovered == 70
    assert rep.v.deadline_miss <= rep.v.unrecovered
    assert rep.seed_metadata["prng"] == "mt19937"
    assert rep.seed_metadata["channel"]["seed"] == 11


def test_simulate_burst_beyond_tolerance_counts_losses(gf256):
    code = build_multiplexed(4, 2, 1, gf256)
    rep = simulate(code, parse_pattern("burst:10,2"), 60, seed=6)
    assert not rep.within_contract
    assert rep.v.unrecovered > 0


def test_simulate_single_stream_code(gf256):
    code = build_single_stream(3, 2, gf256)
    rep = simulate(code, parse_pattern("burst:7,2"), 50, seed=7)
    assert rep.v.recovered == 50
    assert rep.u.recovered == 50  # vacuous stream: empty packets always match


def test_simulate_composite(gf256):
    ts = time_share(build_multiplexed(4, 2, 1, gf256), build_single_stream(4, 1, gf256))
    rep = simulate(ts, parse_pattern("burst:5,1"), 40, seed=8)
    assert rep.v.recovered == 40 and rep.u.recovered == 40
