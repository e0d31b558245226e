"""``fasttrack-bench``: run the line-search comparison and print CSV or JSON."""

from __future__ import annotations

import argparse
import sys

from . import armijo, bench
from .armijo import DescentConfig
from .linesearch import INTERPOLATIONS, ChoiceRule

EXIT_OK, EXIT_USAGE, EXIT_RUN_FAILED = 0, 2, 3


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _names(text):
    return [v.strip() for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fasttrack-bench",
        description="Compare backtracking and fast-tracking line searches on the gradient-descent suite.",
    )
    p.add_argument("--beta", type=_floats, default=[0.8], help="comma-separated list; one report per value")
    p.add_argument("--epsilon", type=float, default=1e-10)
    p.add_argument("--x0", type=float, default=1.0, help="initial (upper-bound) step")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--c", type=float, default=1e-4, help="Armijo constant")
    p.add_argument("--methods", type=_names, default=list(bench.METHODS))
    p.add_argument("--functions", default="all",
                   help="comma-separated suite names, or 'all'; evolution mode uses the first")
    p.add_argument("--itp-interpolation", choices=INTERPOLATIONS, default="linear",
                   help="secant feeding the ITP interpolation step")
    p.add_argument("--mode", choices=("table", "evolution"), default="table")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    names = [f.name for f in armijo.test_suite()]
    functions = names if args.functions == "all" else _names(args.functions)
    unknown = [f for f in functions if f not in names]
    if unknown or not functions:
        parser.error(f"unknown functions {unknown}; choose from {names}")
    bad = [m for m in args.methods if m not in bench.METHODS]
    if bad:
        parser.error(f"unknown methods {bad}; choose from {list(bench.METHODS)}")

    configs = []
    for beta in args.beta:
        try:
            configs.append(DescentConfig(
                steps=args.steps, armijo_c=args.c, beta=beta, epsilon=args.epsilon, x0_step=args.x0,
            ))
        except ValueError as exc:
            parser.error(str(exc))
    if not 0 < args.epsilon < args.x0 or not all(0 < b < 1 for b in args.beta):
        parser.error("need 0 < epsilon < x0 and every beta in (0, 1)")

    rule = ChoiceRule("itp_log", interpolation=args.itp_interpolation)
    failed = False
    if args.mode == "table":
        reports = [bench.run_table(cfg, args.methods, functions, rule) for cfg in configs]
        failed = any(r.failed for r in reports)
        if args.format == "csv":
            text = bench.table_csv(reports)
        else:
            text = bench.to_json({"reports": [r.to_dict() for r in reports]})
    else:
        evolutions = [bench.run_evolution(functions[0], cfg, args.methods, rule) for cfg in configs]
        failed = any(
            s["status"] not in bench.OK_STATUSES for e in evolutions for s in e["series"].values()
        )
        if args.format == "csv":
            text = bench.evolution_csv(evolutions)
        else:
            text = bench.to_json({"evolutions": evolutions})

    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    return EXIT_RUN_FAILED if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
