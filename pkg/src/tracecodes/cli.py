"""Command-line entry point: ``tracecodes {params,enumerate,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage/configuration error,
3 feasibility refusal.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .code import CodeSpec
from .errors import FeasibilityError, ParameterError
from .report import RunConfig, report_ok, run_enumerate, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


def _int_auto(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, required=True, help="extension degree")
    common.add_argument("--poly", type=_int_auto, default=None,
                        help="reduction polynomial bitmask (e.g. 0xb); default: smallest irreducible")
    common.add_argument("--threads", type=int, default=1, help="worker processes")
    common.add_argument("--json-out", type=Path, default=None, help="write the JSON report here")
    common.add_argument("--cache-dir", type=Path, default=None, help="distribution cache directory")
    common.add_argument("--max-lee", type=int, choices=range(1, 5), default=None,
                        help="largest dual Lee weight to search (default: largest feasible)")
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--theorem", action="store_true", help="refuse unless m is odd")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="tracecodes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("params", parents=[common], help="print code parameters")
    sub.add_parser("enumerate", parents=[common], help="exact weight distribution (cached)")
    sub.add_parser("verify", parents=[common], help="run every check and write the report")
    return p


def _config(args: argparse.Namespace) -> RunConfig:
    if args.threads < 1:
        raise ParameterError("--threads must be >= 1")
    if args.trials < 1:
        raise ParameterError("--trials must be >= 1")
    return RunConfig(
        m=args.m,
        poly_override=args.poly,
        threads=args.threads,
        output_path=args.json_out,
        cache_dir=args.cache_dir,
        max_lee=args.max_lee,
        trials=args.trials,
        seed=args.seed,
        theorem=args.theorem,
    )


def _emit(report: dict, path: Optional[Path]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if path is None:
        print(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        spec = cfg.spec()
        if args.command == "params":
            d = spec.as_dict()
            for key in ("m", "n", "n_bin", "k_bin", "units"):
                print(f"{key}={d[key]}")
            print(f"reduction_poly={spec.params.reduction_poly:#x}")
            return EXIT_OK
        if cfg.theorem and spec.m % 2 == 0:
            raise ParameterError(f"hypothesis not met: --theorem requires odd m, got m={spec.m}")
        if args.command == "enumerate":
            _emit(run_enumerate(cfg), cfg.output_path)
            return EXIT_OK
        report = run_verify(cfg)
        _emit(report, cfg.output_path)
        ok = report_ok(report)
        for name, passed in sorted(report["findings"]["checks"].items()):
            print(f"{'PASS' if passed else 'FAIL'}  {name}", file=sys.stderr)
        for note in report["findings"]["notes"]:
            print(f"FINDING  {note}", file=sys.stderr)
        return EXIT_OK if ok else EXIT_FAIL
    except FeasibilityError as exc:
        print(f"tracecodes: refused: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ParameterError as exc:
        print(f"tracecodes: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
