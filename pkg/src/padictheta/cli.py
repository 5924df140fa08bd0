"""Command-line verification harness.

Runs named checks with declared parameters and reports pass/fail/error
per check.  Exit code 0 when everything selected passed, 1 on any failure
or error, 2 on usage problems (unknown check, bad flag combination).

Reports are deterministic for fixed inputs; wall-clock timings are the
one exception, and --omit-timing removes them for byte-stable diffing.
"""

from __future__ import annotations

import argparse
import json
import sys

from .checks import (REGISTRY, VERSION, CheckParams, CheckResult, default_golden_dir,
                     run_checks)
from .errors import UnknownCheck


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padictheta",
        description="Verify the exact p-adic identities in the check registry.")
    parser.add_argument("--check", default="all",
                        help="comma-separated check names, or 'all' (default)")
    parser.add_argument("--prime", type=int, default=None,
                        help="run at a single prime (default: every supported prime)")
    parser.add_argument("--precision", type=int, default=12, metavar="N",
                        help="target digit precision (default 12)")
    parser.add_argument("--degree-cap", type=int, default=24, metavar="D",
                        help="polynomial total-degree cap (default 24)")
    parser.add_argument("--theta-levels", type=int, default=4, metavar="K",
                        help="theta level cap (default 4)")
    parser.add_argument("--q-terms", type=int, default=64, metavar="M",
                        help="q-expansion precision (default 64)")
    parser.add_argument("--lambda-max", type=int, default=8,
                        help="largest lambda/binomial index (default 8)")
    parser.add_argument("--grid", type=int, default=8,
                        help="evaluation grid width (default 8)")
    parser.add_argument("--trials", type=int, default=200,
                        help="randomized instances per property (default 200)")
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--golden", default=None, metavar="DIR",
                        help=f"golden file directory (default {default_golden_dir()})")
    parser.add_argument("--regenerate-golden", action="store_true",
                        help="rewrite golden files instead of comparing (explicit opt-in)")
    parser.add_argument("--omit-timing", action="store_true",
                        help="drop wall-clock fields for byte-stable output")
    parser.add_argument("--list", action="store_true", help="list check names and exit")
    return parser


def format_text(results: list[CheckResult], params: CheckParams, omit_timing: bool) -> str:
    lines = [f"padictheta {VERSION}",
             "params: " + json.dumps(params.echo(), sort_keys=True)]
    for r in results:
        timing = "" if omit_timing else f" ({r.millis} ms)"
        lines.append(f"{r.status.upper():5s} {r.name}{timing}")
        if r.witness:
            for wline in r.witness.strip().splitlines():
                lines.append(f"      | {wline}")
    counts = {"pass": 0, "fail": 0, "error": 0}
    for r in results:
        counts[r.status] += 1
    lines.append(f"{counts['pass']} passed, {counts['fail']} failed, "
                 f"{counts['error']} errors")
    return "\n".join(lines) + "\n"


def format_structured(results: list[CheckResult], params: CheckParams,
                      omit_timing: bool) -> str:
    checks = []
    for r in results:
        entry = {"name": r.name, "status": r.status}
        if r.witness:
            entry["witness"] = r.witness
        if not omit_timing:
            entry["millis"] = r.millis
        checks.append(entry)
    doc = {"version": VERSION, "params": params.echo(), "checks": checks}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list:
        for name in REGISTRY:
            print(name)
        return 0
    if args.check == "all":
        names = list(REGISTRY)
    else:
        names = [n.strip() for n in args.check.split(",") if n.strip()]
        if not names:
            print("no checks selected", file=sys.stderr)
            return 2
    params = CheckParams(
        prime=args.prime if args.prime is not None else 2,
        precision=args.precision,
        theta_levels=args.theta_levels,
        degree_cap=args.degree_cap,
        q_terms=args.q_terms,
        lambda_max=args.lambda_max,
        grid=args.grid,
        trials=args.trials,
        seed=args.seed,
        golden_dir=args.golden,
        regenerate_golden=args.regenerate_golden,
    )
    try:
        results = run_checks(names, params, prime_given=args.prime is not None)
    except UnknownCheck as exc:
        print(str(exc), file=sys.stderr)
        return 2
    formatter = format_structured if args.format == "structured" else format_text
    sys.stdout.write(formatter(results, params, args.omit_timing))
    return 0 if all(r.status == "pass" for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
