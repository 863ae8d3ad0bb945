"""Command line interface: ``distmcor measure|test|transform|experiment``.

Exit codes: 0 success, 2 argument or parse error, 3 degenerate statistic.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .centering import EstimatorKind
from .copula import cmcor, transform_dataset
from .experiments import EXPERIMENTS, run_example_tables
from .inference import TestMethod, independence_test
from .io import DataFormatError, dumps_json, ingest_csv, write_csv
from .measures import DegenerateStatisticError, MeasureVariant, mcor

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _add_measure_args(p):
    p.add_argument("--input", required=True, help="CSV file with a header row")
    p.add_argument("--partition", default=None,
                   help='components, e.g. "1,2|3" (1-based indices or column names); '
                        "default: one component per column")
    p.add_argument("--variant", default="total",
                   choices=[v.value for v in MeasureVariant])
    p.add_argument("--estimator", default="bias-corrected", choices=["biased", "bias-corrected"])
    p.add_argument("--alpha", type=float, default=1.0, help="kernel exponent in (0, 2)")
    p.add_argument("--copula", action="store_true", help="use the copula version (needs --seed)")
    p.add_argument("--seed", type=int, default=None)


def build_parser():
    parser = _Parser(prog="distmcor", description="Distance multicorrelation toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("measure", help="evaluate a dependence measure on a CSV file")
    _add_measure_args(p)

    p = sub.add_parser("test", help="independence test on a CSV file")
    _add_measure_args(p)
    p.add_argument("--permutations", type=int, default=999)
    p.add_argument("--method", default="permutation", choices=["permutation", "bound"])

    p = sub.add_parser("transform", help="emit the Monte Carlo distributional transform as CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None, help="output CSV (default: stdout)")
    p.add_argument("--shared-draws", action="store_true")

    p = sub.add_parser("experiment", help="run a simulation experiment")
    p.add_argument("name", choices=sorted(EXPERIMENTS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="sample size")
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--estimator", default=None, choices=["biased", "bias-corrected"])
    p.add_argument("--copula", action="store_true",
                   help="copula version (dominance, multivariate-curves)")
    p.add_argument("--out", default=None, help="directory for CSV + JSON output")
    return parser


def _cmd_measure(args):
    ds = ingest_csv(args.input, args.partition, args.alpha)
    est = EstimatorKind.parse(args.estimator)
    if args.copula:
        if args.seed is None:
            raise _UsageError("--copula requires an explicit --seed")
        res = cmcor(ds, None, est, args.variant, args.seed)
    else:
        res = mcor(ds, None, args.variant, est)
    out = {
        "config": {"input": args.input, "partition": [list(c) for c in ds.partition.components],
                   "variant": res.variant, "estimator": res.estimator, "alpha": args.alpha,
                   "copula": args.copula, "seed": args.seed},
        "value": res.value, "squared_value": res.squared_value,
        "n_components": res.n_components, "sample_size": res.sample_size,
    }
    if res.statistic is not None:
        out["statistic"] = res.statistic
    return out


def _cmd_test(args):
    ds = ingest_csv(args.input, args.partition, args.alpha)
    if args.copula and args.seed is None:
        raise _UsageError("--copula requires an explicit --seed")
    method = TestMethod.parse(args.method)
    seed = 0 if args.seed is None else args.seed
    res = independence_test(ds, None, method, variant=args.variant,
                            estimator=EstimatorKind.parse(args.estimator),
                            n_permutations=args.permutations, seed=seed,
                            copula_seed=seed if args.copula else None)
    return {
        "config": {"input": args.input, "partition": [list(c) for c in ds.partition.components],
                   "variant": args.variant, "estimator": args.estimator, "alpha": args.alpha,
                   "copula": args.copula, "method": method, "permutations": res.permutations,
                   "seed": seed},
        "statistic": res.statistic, "p_value": res.p_value,
    }


def _cmd_transform(args):
    ds = ingest_csv(args.input)
    t = transform_dataset(ds, args.seed, shared_draws=args.shared_draws)
    write_csv(args.out or sys.stdout, t.values, ds.labels)
    return None


def _cmd_experiment(args):
    kwargs = {}
    if args.cases is not None:
        kwargs["cases"] = args.cases
    if args.n is not None:
        kwargs["n_samples"] = args.n
    if args.rho is not None:
        if args.name not in ("example-4.2", "example-5.4", "dominance"):
            raise _UsageError(f"--rho is not used by {args.name}")
        kwargs["rho"] = args.rho
    if args.estimator is not None:
        if args.name == "bias-comparison":
            raise _UsageError("bias-comparison always reports both estimators")
        kwargs["estimator"] = EstimatorKind.parse(args.estimator)
    if args.copula:
        if args.name not in ("dominance", "multivariate-curves"):
            raise _UsageError(f"--copula is not used by {args.name}")
        kwargs["copula"] = True
    if args.name in ("multivariate-curves",) and "cases" in kwargs:
        raise _UsageError("multivariate-curves uses one sample per setting; --cases not used")
    report = run_example_tables(args.name, seed=args.seed, out_dir=args.out, **kwargs)
    return {"experiment": report.name, "config": report.config, "rows": report.rows}


COMMANDS = {
    "measure": _cmd_measure,
    "test": _cmd_test,
    "transform": _cmd_transform,
    "experiment": _cmd_experiment,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"distmcor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateStatisticError as exc:
        print(f"distmcor: degenerate statistic: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (DataFormatError, ValueError, OSError) as exc:
        print(f"distmcor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if result is not None:
        sys.stdout.write(dumps_json(result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
