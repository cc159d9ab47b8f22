"""Command-line entry point: ``nbhd-lab <subcommand> [flags]``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage,
validation or I/O errors. Reports are JSON on stdout or ``--out``.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import continuum, enumerate as enum
from .constructions import PRODUCT_MODES
from .continuum import Check, ConfigError, PaperConfig, parse_rational
from .morphism import SpaceMap, is_continuous_at
from .pstack import DomainError, ResourceError, format_label, image_stack
from .space import NbdStructure


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bounded(lo: int, hi: int | None = None):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < lo or (hi is not None and v > hi):
            upper = "" if hi is None else f" and <= {hi}"
            raise argparse.ArgumentTypeError(f"{v} must be >= {lo}{upper}")
        return v

    return parse


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nbhd-lab",
        description="Finite neighborhood spaces and an exact check of the R x Q quotient counterexample.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)

    def out_flag(sp):
        sp.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")

    v = sub.add_parser("verify-paper", help="run the exact-rational counterexample checks",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    v.add_argument("--q", type=_rational, default=Fraction(0), help="base point in Q (p/q literal)")
    v.add_argument("--z-range", type=_bounded(1), default=1000, help="explicit sweep over |z| <= this")
    v.add_argument("--delta-count", type=_bounded(1), default=100, help="delta grid is 1/k for k = 1..N")
    v.add_argument("--eps-trials", type=_bounded(1), default=100, help="eps families per delta")
    v.add_argument("--samples", type=_bounded(0), default=100_000, help="random points for the preimage check")
    v.add_argument("--window", type=_rational, default=Fraction(16), help="abscissa sampling window [-w, w]")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--mode", choices=("Q", "R"), default="Q", help="second factor Q or R")
    out_flag(v)

    e = sub.add_parser("enumerate", help="count nbd stacks and structures on a small carrier",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    e.add_argument("--size", type=_bounded(1, 3), default=3)
    out_flag(e)

    u = sub.add_parser("check-universal", help="exhaustive universal-property checks",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    u.add_argument("--max-x", type=_bounded(1, 3), default=3)
    u.add_argument("--max-y", type=_bounded(1, 2), default=2)
    out_flag(u)

    s = sub.add_parser("search-product-quotient", help="search for finite products of quotients that fail to be quotient",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    s.add_argument("--max-x", type=_bounded(1, 3), default=2)
    s.add_argument("--max-y", type=_bounded(1, 2), default=2)
    s.add_argument("--mode", choices=PRODUCT_MODES, default="cylinder")
    out_flag(s)

    c = sub.add_parser("check-continuity", help="test a map between two spaces given as JSON files")
    c.add_argument("domain", type=Path, help="JSON structure: label -> stack text")
    c.add_argument("codomain", type=Path, help="JSON structure: label -> stack text")
    c.add_argument("map", type=Path, help="JSON map: label -> label")
    out_flag(c)
    return p


def _report(command, config, checks, **extra) -> dict:
    out = {"command": command, "config": config, "checks": [c.to_dict() for c in checks]}
    out.update(extra)
    out["overall"] = "pass" if all(c.passed for c in checks) else "fail"
    return out


def cmd_verify_paper(args) -> dict:
    cfg = PaperConfig(
        q=args.q,
        z_range=args.z_range,
        delta_grid=continuum.default_delta_grid(args.delta_count),
        eps_trials=args.eps_trials,
        samples=args.samples,
        seed=args.seed,
        mode=args.mode,
        window=args.window,
    )
    return continuum.run_paper_verification(cfg).to_dict()


def cmd_enumerate(args) -> dict:
    n = args.size
    carrier = enum.standard_carrier(n)
    per_point = {format_label(x): len(enum.enumerate_nbd_stacks(carrier, x)) for x in carrier}
    structures = len(enum.enumerate_structures(carrier))
    oracle = enum.brute_force_stack_count(n)
    product = 1
    for k in per_point.values():
        product *= k
    checks = [
        Check("stack_count_matches_brute_force", all(k == oracle for k in per_point.values()),
              {"oracle": oracle, "per_point": per_point}),
        Check("structure_count_is_product", structures == product, {"structures": structures, "expected": product}),
    ]
    return _report(
        "enumerate",
        {"size": n},
        checks,
        counts={"stacks_per_point": oracle, "structures": structures},
    )


def _as_check(r: enum.SearchReport) -> Check:
    return Check(r.name, r.ok, {"parameters": r.parameters, "counts": r.counts}, r.counterexamples[:5] or None)


def cmd_check_universal(args) -> dict:
    reports = [
        enum.check_final_lift_universal(args.max_x, args.max_y),
        enum.check_initial_lift_universal(args.max_x, args.max_y),
        enum.check_product_universal(min(2, args.max_x)),
        enum.check_coreflection(min(2, args.max_x)),
    ]
    return _report("check-universal", {"max_x": args.max_x, "max_y": args.max_y}, [_as_check(r) for r in reports])


def cmd_search(args) -> dict:
    r = enum.search_product_quotient(args.max_x, args.max_y, args.mode)
    bad = [c for c in r.counterexamples if not enum.reverify_counterexample(c, args.mode)]
    checks = [
        Check("counterexamples_reverify", not bad, {"listed": len(r.counterexamples)}, bad[:1] or None),
        Check("certified_none_consistent", r.certified_none == (not r.counterexamples and r.exhausted),
              {"certified_none": r.certified_none}),
    ]
    return _report(
        "search-product-quotient",
        {"max_x": args.max_x, "max_y": args.max_y, "mode": args.mode},
        checks,
        search=r.to_dict(),
    )


def _load_json(path: Path) -> dict:
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict) or not all(isinstance(v, str) for v in data.values()):
        raise UsageError(f"{path}: expected a JSON object of strings")
    return data


def cmd_check_continuity(args) -> dict:
    nuX = NbdStructure.from_dict(_load_json(args.domain))
    nuY = NbdStructure.from_dict(_load_json(args.codomain))
    f = SpaceMap.from_dict(nuX.carrier, nuY.carrier, _load_json(args.map))
    checks = []
    for x in f.dom:
        ok = is_continuous_at(f, nuX, nuY, x)
        witness = None
        if not ok:
            img = image_stack(f, nuX(x))
            missing = next(m for m in nuY(f(x)).minimal if not img.contains_mask(m))
            witness = {"target_set": [format_label(y) for y in nuY.carrier.labels(missing)]}
        checks.append(Check(f"continuous_at_{format_label(x)}", ok,
                            {"image_stack": image_stack(f, nuX(x)).text(), "target_stack": nuY(f(x)).text()},
                            witness))
    return _report(
        "check-continuity",
        {"domain": str(args.domain), "codomain": str(args.codomain), "map": str(args.map)},
        checks,
    )


COMMANDS = {
    "verify-paper": cmd_verify_paper,
    "enumerate": cmd_enumerate,
    "check-universal": cmd_check_universal,
    "search-product-quotient": cmd_search,
    "check-continuity": cmd_check_continuity,
}


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = COMMANDS[args.command](args)
    except (UsageError, ConfigError, DomainError, ResourceError) as exc:
        print(f"nbhd-lab: error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(report, indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            args.out.write_text(text)
        except OSError as exc:
            print(f"nbhd-lab: error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return 2
    return 0 if report["overall"] == "pass" else 1


def main() -> None:
    sys.exit(run_command())
