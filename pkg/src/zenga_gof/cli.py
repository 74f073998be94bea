"""Command-line front end.

Subcommands::

    zenga-gof lambda --input data.txt [--reference ALPHA]
    zenga-gof test   --input data.txt --bootstrap 500 --seed 1 --level 0.05
    zenga-gof sample pareto:2:1 --n 100 --seed 7
    zenga-gof power  table1 --replications 100 --bootstrap 199 --output out/power

Exit status is 0 whenever a command ran to completion (whatever the test
decision), 1 on a data, parameter or I/O error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import __version__
from .distributions import draw, parse_spec
from .empirical import lambda_curve, parse_sample, read_sample
from .errors import ZengaError
from .gof import bootstrap_test
from .power import PowerStudyConfig, bundled_config, power_table
from .streams import RngStream


def _load_input(args):
    if args.input in (None, "-"):
        return parse_sample(sys.stdin, args.csv_column, source="<stdin>")
    return read_sample(args.input, args.csv_column)


def _emit(text: str, output):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def cmd_lambda(args) -> int:
    curve = lambda_curve(_load_input(args))
    ref = None if args.reference is None else 1.0 / args.reference
    if (args.format or "csv") == "json":
        doc = {"n": curve.n, "m": curve.m, "p": curve.p.tolist(), "lambda_hat": curve.lambda_hat.tolist()}
        if ref is not None:
            doc["reference"] = ref
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["p", "lambda_hat"] + (["reference"] if ref is not None else []))
        for p, lam in curve.points:
            writer.writerow([repr(p), repr(lam)] + ([repr(ref)] if ref is not None else []))
        text = buf.getvalue()
    _emit(text, args.output)
    return 0


def cmd_test(args) -> int:
    data = _load_input(args)
    result = bootstrap_test(
        data, args.bootstrap, RngStream(args.seed), levels=args.level or [0.05], workers=args.threads
    )
    if (args.format or "json") == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["field", "value"])
        for key, value in result.to_dict().items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value)
            writer.writerow([key, repr(value) if isinstance(value, float) else value])
        text = buf.getvalue()
    else:
        text = result.to_json() + "\n"
    _emit(text, args.output)
    if args.replicates:
        _emit(result.replicates_csv(), args.replicates)
    return 0


def cmd_sample(args) -> int:
    spec = parse_spec(args.spec)
    values = draw(spec, args.n, RngStream(args.seed))
    # repr round-trips exactly, so piping into `lambda` or `test` loses nothing
    _emit("".join(f"{v!r}\n" for v in values.tolist()), args.output)
    return 0


def cmd_power(args) -> int:
    source = Path(args.config)
    if not source.exists() and source.suffix == "":
        source = bundled_config(args.config)
    config = PowerStudyConfig.from_toml(source).with_overrides(
        replications=args.replications,
        bootstrap_M=args.bootstrap,
        seed=args.seed,
        level=args.level[-1] if args.level else None,
    )

    def progress(k, total, cell):
        status = cell.aborted or f"{cell.proportion:.3f} (se {cell.mc_se:.3f}, errors {cell.errors})"
        print(f"[{k + 1}/{total}] {cell.label} n={cell.n}: {status}", file=sys.stderr, flush=True)

    start = time.perf_counter()
    table = power_table(config, workers=args.threads, progress=progress if args.progress else None)
    elapsed = time.perf_counter() - start

    fmt = args.format or "csv"
    if args.output in (None, "-"):
        _emit(table.to_csv() if fmt == "csv" else table.to_json() + "\n", None)
    else:
        stem = Path(args.output)
        stem = stem.with_suffix("") if stem.suffix in (".csv", ".json") else stem
        _emit(table.to_csv(), stem.with_suffix(".csv"))
        _emit(table.to_json() + "\n", stem.with_suffix(".json"))
    print(f"total wall time: {elapsed:.2f} s", file=sys.stderr)
    return 0


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zenga-gof",
        description="Zenga inequality curve and bootstrap goodness-of-fit test for the Pareto law.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def data_args(p):
        p.add_argument("--input", "-i", help="data file, one value per line ('-' or omitted: stdin)")
        p.add_argument("--csv-column", metavar="NAME", help="read column NAME of a CSV file instead")

    def out_args(p, formats=("csv", "json")):
        p.add_argument("--output", "-o", help="output path (default: stdout)")
        p.add_argument("--format", choices=formats)

    p = sub.add_parser("lambda", help="estimate the λ̂ curve of a data set")
    data_args(p)
    out_args(p)
    p.add_argument("--reference", type=float, metavar="ALPHA", help="add a constant 1/ALPHA column")
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("test", help="bootstrap goodness-of-fit test for the Pareto law")
    data_args(p)
    out_args(p)
    # M is validated by the library so that M = 0 reports a parameter error
    p.add_argument("--bootstrap", "-M", type=int, default=500, metavar="M")
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    p.add_argument("--level", type=float, action="append", help="test level (repeatable)")
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--replicates", metavar="PATH", help="also write bootstrap slopes as CSV")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("sample", help="draw a sample from a distribution spec")
    p.add_argument("spec", help="pareto:ALPHA[:X0] | lognormal:SIGMA | exp | gamma:K | logweibull:THETA")
    p.add_argument("--n", "-n", type=_positive_int, required=True)
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("power", help="run a Monte Carlo size/power study")
    p.add_argument("config", help="TOML config path, or the name of a bundled config (table1)")
    p.add_argument("--output", "-o", metavar="STEM", help="write STEM.csv and STEM.json")
    p.add_argument("--format", choices=("csv", "json"), help="stdout format when --output is absent")
    p.add_argument("--replications", "-R", type=int)
    p.add_argument("--bootstrap", "-M", type=int)
    p.add_argument("--seed", type=_nonnegative_int)
    p.add_argument("--level", type=float, action="append")
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--progress", action="store_true", help="per-cell progress lines on stderr")
    p.set_defaults(func=cmd_power)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ZengaError as exc:
        print(f"zenga-gof {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
