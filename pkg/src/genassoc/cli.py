"""Command-line entry point: ``genassoc <command> --spec PATH [...]``."""

from __future__ import annotations

import argparse
import json
import sys

from .ops import OutsideValidDomain
from .report import METHODS, InvariantFailure, build_report, summarize
from .specfile import COMMANDS, SpecError, parse_spec

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genassoc",
                                description="Analyse associativity of generated operations.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--spec", required=True, help="scenario JSON file")
    p.add_argument("--method", choices=METHODS, default="all", help="criterion for `check`")
    p.add_argument("--grid", type=int, help="grid denominator (default 16 for check, 8 for tables)")
    p.add_argument("--at", help="single point for `gm`, e.g. 4 or 7/2 or inf")
    p.add_argument("--out", help="write the JSON report here")
    return p


def _write(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.grid is not None and args.grid < 1:
        print("error: --grid must be a positive integer", file=sys.stderr)
        return EXIT_INPUT
    try:
        with open(args.spec, encoding="utf-8") as fh:
            spec = parse_spec(fh.read())
    except OSError as exc:
        print(f"error: cannot read {args.spec}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = build_report(spec, args.command, args.method, args.grid, args.at)
    except OutsideValidDomain as exc:
        report = {"error": {"kind": "outside_valid_domain", "message": str(exc),
                            "pair": [str(v) for v in exc.pair if v is not None]}}
        _write(report, args.out)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantFailure as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _write(report, args.out)
    print(summarize(report))
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
