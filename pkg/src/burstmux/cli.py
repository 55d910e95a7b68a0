"""Thin command-line client over the shared handlers.

Canonical machine output (JSON, or CSV for `region --format csv`) goes to
stdout; short human summaries go to stderr.  Exit codes: 0 success/pass,
1 verification failure, 2 usage or regime errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import api
from .capacity import region as capacity_region
from .descriptor import load_path
from .errors import BurstmuxError

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="burstmux",
        description="Multiplexed streaming erasure codes for burst channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="emit a code descriptor for the given regime")
    p.add_argument("--tv", type=int, required=True)
    p.add_argument("--tu", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--field", default=None, metavar="ORDER:POLY")
    p.add_argument("--target-rv", default=None, metavar="P/Q")
    p.add_argument("--target-ru", default=None, metavar="P/Q")

    p = sub.add_parser("verify", help="run the exhaustive streaming burst sweep")
    p.add_argument("--code", required=True, metavar="PATH")
    p.add_argument("--burst", type=int, required=True)
    p.add_argument("--horizon", type=int, default=None)

    p = sub.add_parser("region", help="export the capacity region polygon")
    p.add_argument("--tv", type=int, required=True)
    p.add_argument("--tu", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), required=True)

    p = sub.add_parser("simulate", help="seeded encoder->channel->decoder run")
    p.add_argument("--code", required=True, metavar="PATH")
    p.add_argument("--pattern", required=True, metavar="SPEC")
    p.add_argument("--slots", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    return parser


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_design(args) -> int:
    result = api.design_op(
        args.tv, args.tu, args.b, args.field, args.target_rv, args.target_ru
    )
    _emit(result)
    rates = result["rates"]
    print(
        f"designed code with exact rates (Rv, Ru) = ({rates['rv']}, {rates['ru']})",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .descriptor import to_dict

    code = load_path(args.code)
    result = api.verify_op(to_dict(code), args.burst, args.horizon)
    _emit(result)
    print(
        f"{result['verdict']}: {result['patterns_checked']} burst starts, "
        f"{result['situations_checked']} distinct situations, "
        f"{result['failure_count']} failures",
        file=sys.stderr,
    )
    return EXIT_OK if result["verdict"] == "pass" else EXIT_VERIFY_FAIL


def _cmd_region(args) -> int:
    reg = capacity_region(args.tv, args.tu, args.b)
    if args.format == "csv":
        sys.stdout.write(api.region_to_csv(reg))
    else:
        _emit(api.region_to_dict(reg))
    print(f"{reg.case_tag}: {len(reg.vertices)} vertices", file=sys.stderr)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    from .descriptor import to_dict

    code = load_path(args.code)
    result = api.simulate_op(to_dict(code), args.pattern, args.slots, args.seed)
    _emit(result)
    v, u = result["v"], result["u"]
    print(
        f"simulated {result['slots']} slots: v {v['recovered']}/{result['slots']} "
        f"recovered, u {u['recovered']}/{result['slots']} recovered",
        file=sys.stderr,
    )
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "design": _cmd_design,
        "verify": _cmd_verify,
        "region": _cmd_region,
        "simulate": _cmd_simulate,
    }
    try:
        return handlers[args.command](args)
    except BurstmuxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
