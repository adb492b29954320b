"""Command-line entry point.

    conbranch solve <file> [--mode ...] [--cuts] [--json] [--report-dir DIR]

Input is either the native text format or MPS (by .mps extension or the
--format flag).  Exit codes: 0 success, 1 usage error, 2 parse error,
3 solver failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import ConbranchError, ParseError, SolverFailure, UnsupportedFeature
from .mps import parse_mps
from .native import parse_native
from .pipeline import MODES, PipelineOptions, run_pipeline
from .report import render_figures, render_json, render_table, write_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_SOLVER = 3


def build_parser():
    parser = argparse.ArgumentParser(
        prog="conbranch",
        description="Strengthen MILP LP bounds by combining branchings.")
    sub = parser.add_subparsers(dest="command")
    solve = sub.add_parser("solve", help="run the bound pipeline on one instance")
    solve.add_argument("file", help="instance file (native text or MPS)")
    solve.add_argument("--mode", choices=MODES, default="simple")
    solve.add_argument("--no-normalize", action="store_true",
                       help="skip the gain-equalizing case rescale")
    solve.add_argument("--cuts", action="store_true",
                       help="emit one cutting plane per improving branching")
    solve.add_argument("--integrity", action="store_true",
                       help="walk the optimal face toward integer values")
    solve.add_argument("--refine", action="store_true",
                       help="re-solve children with the distance penalty")
    solve.add_argument("--json", action="store_true",
                       help="print the full report as JSON")
    solve.add_argument("--seed", type=int, default=0,
                       help="seed for randomized parts (anchor columns)")
    solve.add_argument("--max-candidates", type=int, default=None, metavar="K",
                       help="branch on at most K fractional variables")
    solve.add_argument("--format", choices=("native", "mps"), default=None,
                       help="input format (default: by file extension)")
    solve.add_argument("--report-dir", default=None, metavar="DIR",
                       help="write CSV and figures into this directory")
    return parser


def load_model(path, fmt=None):
    with open(path) as fh:
        text = fh.read()
    name = os.path.splitext(os.path.basename(path))[0]
    if fmt is None:
        fmt = "mps" if path.lower().endswith(".mps") else "native"
    if fmt == "mps":
        return parse_mps(text, name=name)
    return parse_native(text, name=name)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.command != "solve":
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.seed < 0:
        print("conbranch: --seed must be nonnegative", file=sys.stderr)
        return EXIT_USAGE

    try:
        model = load_model(args.file, args.format)
    except OSError as exc:
        print(f"conbranch: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, UnsupportedFeature) as exc:
        print(f"conbranch: {exc}", file=sys.stderr)
        return EXIT_PARSE

    options = PipelineOptions(
        mode=args.mode,
        normalize=not args.no_normalize,
        cuts=args.cuts,
        integrity=args.integrity,
        refine=args.refine,
        seed=args.seed,
        max_candidates=args.max_candidates,
    )
    try:
        report = run_pipeline(model, options)
    except SolverFailure as exc:
        print(f"conbranch: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ConbranchError as exc:
        print(f"conbranch: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    if args.json:
        print(render_json(report))
    else:
        print(render_table([report]))
        for cut in report.cuts:
            terms = " + ".join(f"{a:g}*{n}" for n, a in sorted(cut.coefs.items()))
            op = "<=" if cut.kind == "le" else ">="
            print(f"cut[{cut.file_id}]: {terms} {op} {cut.rhs:g}")
        for var, row in report.fixings:
            print(f"fixing[{var}]: {row}")
        if report.fractional_before is not None:
            print(f"integrity: fractional {report.fractional_before} "
                  f"-> {report.fractional_after}")

    if args.report_dir:
        os.makedirs(args.report_dir, exist_ok=True)
        write_csv([report], os.path.join(args.report_dir, "report.csv"))
        paths = render_figures(report, args.report_dir)
        for p in paths:
            print(f"wrote {p}", file=sys.stderr)

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
