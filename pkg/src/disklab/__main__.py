"""Command-line front end.

Usage:
    python -m disklab reduce pmc->subdivision in.json --out target.json
    python -m disklab verify isolation inst.json cert.json
    python -m disklab solve mc inst.json --out optimum.json
    python -m disklab lift --record r.json --solution s.json \
        --source-instance a.json --target-instance b.json --out lifted.json
    python -m disklab render inst.json --out picture.svg
    python -m disklab check-params --n 2 --params sound
    python -m disklab lemma-oracle --n 3

Exit codes: 0 accepted/succeeded, 1 rejected/refused, 2 malformed input.
Diagnostics go to stderr as JSON lines; result payloads go to --out files
(or stdout for the report commands).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from .geometry import rational_from_str
from . import pipeline


def _diag(level: str, lines: List[str]) -> None:
    for line in lines:
        print(json.dumps({"level": level, "msg": line}, sort_keys=True),
              file=sys.stderr)


def _override_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--params", choices=["sound", "toy"], default="sound",
                        help="parameter regime for synthesis")
    for name in ("r", "h", "s", "a", "spacing"):
        parser.add_argument(f"--{name}", default=None, metavar="P/Q",
                            help=f"override parameter {name} (rational)")


def _collect_overrides(args) -> Dict[str, Fraction]:
    out: Dict[str, Fraction] = {}
    for name in ("r", "h", "s", "a", "spacing"):
        val = getattr(args, name, None)
        if val is not None:
            out[name] = rational_from_str(val)
    return out


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="disklab", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="compile an instance into a harder one")
    p.add_argument("kind", choices=list(pipeline.REDUCTION_KINDS))
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--record", default=None,
                   help="provenance record path (default: OUT.record.json)")
    _override_flags(p)

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("problem",
                   choices=["isolation", "acc", "udmc", "mc", "subdivision"])
    p.add_argument("instance")
    p.add_argument("certificate")

    p = sub.add_parser("solve", help="ground-truth optimum (may refuse)")
    p.add_argument("problem",
                   choices=["mc", "subdivision", "fvs", "isolation", "acc",
                            "terminal-pair-cut", "udmc-bound"])
    p.add_argument("instance")
    p.add_argument("--out", required=True)
    p.add_argument("--cap-subset", type=int, default=None,
                   help="subset-size cap for enumeration solvers")

    p = sub.add_parser("lift", help="map a target solution back to the source")
    p.add_argument("--record", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--source-instance", required=True)
    p.add_argument("--target-instance", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("render", help="deterministic SVG of an instance/drawing")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--guides", action="store_true", help="draw grid guide lines")

    p = sub.add_parser("check-params", help="constraint report for one grid size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    _override_flags(p)

    p = sub.add_parser("lemma-oracle", help="exhaustive grid distance/angle facts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)

    return top


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "reduce":
        code, lines = pipeline.cli_reduce(
            args.kind, args.input, args.out, record_path=args.record,
            mode=args.params, overrides=_collect_overrides(args))
        _diag("info" if code == 0 else "error", lines)
        return code

    if args.command == "verify":
        code, lines = pipeline.cli_verify(args.problem, args.instance,
                                          args.certificate)
        _diag("info" if code == 0 else "error", lines)
        return code

    if args.command == "solve":
        code, lines = pipeline.cli_solve(args.problem, args.instance, args.out,
                                         cap_subset=args.cap_subset)
        _diag("info" if code == 0 else "error", lines)
        return code

    if args.command == "lift":
        code, lines = pipeline.cli_lift(
            args.record, args.solution, args.source_instance,
            args.target_instance, args.out)
        _diag("info" if code == 0 else "error", lines)
        return code

    if args.command == "render":
        code, lines = pipeline.cli_render(args.input, args.out,
                                          guides=args.guides)
        _diag("info" if code == 0 else "error", lines)
        return code

    if args.command == "check-params":
        try:
            code, payload = pipeline.cli_check_params(
                args.n, args.params, _collect_overrides(args))
        except ValueError as exc:
            _diag("error", [f"malformed: {exc}"])
            return 2
        text = json.dumps(payload, sort_keys=True, indent=2)
        if args.out:
            pipeline.write_json(payload, args.out)
        else:
            print(text)
        return code

    if args.command == "lemma-oracle":
        try:
            payload = pipeline.cli_lemma_oracle(args.n)
        except ValueError as exc:
            _diag("error", [f"malformed: {exc}"])
            return 2
        if args.out:
            pipeline.write_json(payload, args.out)
        else:
            print(json.dumps(payload, sort_keys=True, indent=2))
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
