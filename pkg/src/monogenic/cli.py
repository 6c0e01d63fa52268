"""Command line entry point: ``monogenic verify`` and ``monogenic eval``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .evalspec import SpecParseError, eval_function
from .verify import SUITES, SuiteConfig, emit_report, exit_status, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monogenic", description="Verify and tabulate monogenic model identities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all", choices=SUITES + ("all",))
    v.add_argument("--n", type=int, default=2, help="algebra dimension")
    v.add_argument("--degree", type=int, default=8, help="degree cap")
    v.add_argument("--quad", type=int, default=40, help="Gauss-Hermite order")
    v.add_argument("--h", type=float, default=1e-4, help="finite-difference step")
    v.add_argument("--tol-scale", type=float, default=1.0, help="multiplier for every tolerance")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", default="json", choices=("json", "csv", "text"))
    v.add_argument("--out", type=Path, help="write the report here instead of stdout")

    e = sub.add_parser("eval", help="tabulate functions at points")
    e.add_argument("--spec", type=Path, required=True, help="function spec file")
    e.add_argument("--points", type=Path, required=True, help="points file")
    e.add_argument("--out", type=Path, help="write JSON here instead of stdout")
    return parser


def _write(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_verify(args) -> int:
    cfg = SuiteConfig(args.suite, args.n, args.degree, args.quad, args.h, args.tol_scale,
                      args.seed, args.format)
    try:
        cfg.validate()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    records = run_suite(cfg)
    _write(emit_report(cfg, records), args.out)
    status = exit_status(records)
    warnings = [r.id for r in records if r.diagnostic and not r.passed]
    if warnings:
        print(f"warning: {len(warnings)} diagnostic check(s) outside tolerance: "
              + ", ".join(sorted(set(warnings))), file=sys.stderr)
    if status:
        failed = sorted({r.id for r in records if not r.diagnostic and not r.passed})
        print("failed: " + ", ".join(failed), file=sys.stderr)
    return status


def cmd_eval(args) -> int:
    try:
        text = eval_function(args.spec.read_text(), args.points.read_text())
    except SpecParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write(text, args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return cmd_verify(args) if args.command == "verify" else cmd_eval(args)


if __name__ == "__main__":
    sys.exit(main())
