"""Command-line entry point: ``genodiv {measure,cases,validate,bench,oracle}``.

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import reporting
from .core import Landscape, MeasureKind, format_population, load_population
from .geometry import HypercubeSet, mc_union_volume, union_volume
from .measures import evaluate, hypercube_side, parse_measure
from .scenarios import BenchmarkConfig, FrozenCaseSpec, benchmark_run, frozen_case
from .validation import CASE_BINS, DEFAULT_RESOLUTION, DEFAULT_TOL, validation_report

ALL_MEASURES = "dpw,gfs,dl,dmst"


class UsageError(Exception):
    pass


def parse_bounds(text: str) -> Landscape:
    """Parse ``lo:hi[,lo:hi...]`` into a landscape."""
    pairs = []
    for part in text.split(","):
        lo, sep, hi = part.strip().partition(":")
        if not sep:
            raise UsageError(f"bad bounds pair {part!r}, expected lo:hi")
        try:
            pairs.append((float(lo), float(hi)))
        except ValueError:
            raise UsageError(f"bad bounds pair {part!r}") from None
    try:
        return Landscape(tuple(pairs))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_measures(text: str, bins: int):
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise UsageError("at least one measure is required")
    specs = []
    for name in names:
        try:
            specs.append(parse_measure(name, bins))
        except ValueError:
            choices = ", ".join(k.value for k in MeasureKind)
            raise UsageError(f"unknown measure {name!r} (choose from {choices})") from None
    return specs


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return v


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _read_population(args):
    landscape = parse_bounds(args.bounds)
    try:
        return load_population(args.input, landscape)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_measure(args) -> int:
    specs = parse_measures(args.measures, args.bins)
    pop = _read_population(args)
    for spec in specs:
        value = evaluate(spec, pop)
        print(json.dumps({"measure": spec.label, "params": spec.params, "value": value}))
    return 0


def cmd_cases(args) -> int:
    landscape = parse_bounds(args.bounds)
    try:
        spec = FrozenCaseSpec(args.case, args.optima, args.n, landscape)
        pop = frozen_case(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(format_population(pop), args.out)
    return 0


def cmd_validate(args) -> int:
    # the sweep and the frozen cases substitute their own GF_S bin counts
    specs = parse_measures(args.measures, CASE_BINS)
    if args.resolution < 3 or args.resolution % 2 == 0:
        raise UsageError("--resolution must be odd and at least 3")
    report = validation_report(specs, args.tol, args.resolution)
    text = reporting.report_json(report) if args.format == "json" else reporting.report_text(report)
    _write(text, args.out)
    if args.grid_csv:
        Path(args.grid_csv).write_text(reporting.case_grid_csv(report), encoding="utf-8")
    if args.sweep_dir:
        out = Path(args.sweep_dir)
        out.mkdir(parents=True, exist_ok=True)
        for mr in report.measures:
            (out / f"sweep_{mr.measure.label}.csv").write_text(reporting.sweep_csv(mr.curve), encoding="utf-8")
    if args.plot:
        from .plotting import plot_sweeps

        plot_sweeps([mr.curve for mr in report.measures], args.plot)
    return 0


def cmd_bench(args) -> int:
    specs = parse_measures(args.measures, args.bins)
    try:
        config = BenchmarkConfig(
            optima_count=args.optima,
            N=args.n,
            landscape=parse_bounds(args.bounds),
            iterations=args.iterations,
            repetitions=args.reps,
            seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = benchmark_run(config, specs, workers=args.workers)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "bench_trace.csv").write_text(reporting.trace_csv(result), encoding="utf-8")
    (out / "bench_aggregate.csv").write_text(reporting.aggregate_csv(result), encoding="utf-8")
    for m in specs:
        print(json.dumps({
            "measure": m.label,
            "params": m.params,
            "optima": config.optima_count,
            "final_mean_normalized": result.final_mean(m),
            "final_std_normalized": float(result.std[m][-1]),
        }))
    if args.plot:
        from .plotting import plot_benchmark

        plot_benchmark(result, args.plot)
    return 0


def cmd_oracle(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    pop = _read_population(args)
    cubes = HypercubeSet(pop.locations, hypercube_side(pop))
    exact = union_volume(cubes)
    estimate, std_error = mc_union_volume(cubes, args.samples, args.seed)
    diff = abs(exact - estimate)
    if std_error > 0:
        z = diff / std_error
    else:
        z = 0.0 if math.isclose(exact, estimate, rel_tol=1e-12, abs_tol=1e-15) else math.inf
    print(json.dumps({
        "side": cubes.side,
        "exact": exact,
        "estimate": estimate,
        "std_error": std_error,
        "z": z,
    }))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genodiv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="evaluate diversity measures on a population CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--bounds", required=True, help="lo:hi per gene, comma separated")
    p.add_argument("--measures", default=ALL_MEASURES)
    p.add_argument("--bins", type=_positive, default=100, help="GF_S interval count")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("cases", help="write a frozen-case population as CSV")
    p.add_argument("--case", type=int, required=True, choices=range(1, 8), metavar="{1..7}")
    p.add_argument("--optima", type=int, default=2, help="2 or 4 (cases 2-5)")
    p.add_argument("--n", type=_positive, default=100, help="population size")
    p.add_argument("--bounds", default="-1:1,-1:1")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_cases)

    p = sub.add_parser("validate", help="check the diversity requirements on both frameworks")
    p.add_argument("--measures", default=ALL_MEASURES)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="report path (default stdout)")
    p.add_argument("--grid-csv", help="write the frozen-case value grid here")
    p.add_argument("--sweep-dir", help="write one sweep CSV per measure into this directory")
    p.add_argument("--plot", help="figure of the sweep curves (suffix picks the format)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="run the shrinking-hyperspace convergence benchmark")
    p.add_argument("--optima", type=_positive, default=1)
    p.add_argument("--n", type=_positive, default=100)
    p.add_argument("--bounds", default="0:1,0:1")
    p.add_argument("--iterations", type=int, default=51)
    p.add_argument("--reps", type=_positive, default=50)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--measures", default="dpw")
    p.add_argument("--bins", type=_positive, default=100)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--out-dir", default=".", help="directory for bench_trace.csv and bench_aggregate.csv")
    p.add_argument("--plot", help="figure of the mean normalised history")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="compare exact D_L volume with a Monte Carlo estimate")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--bounds", required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_oracle)
    return parser


def _glue_bounds(argv: list[str]) -> list[str]:
    # "-1:1,..." starts with a dash, which argparse would read as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--bounds":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--bounds={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_bounds(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"genodiv {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"genodiv {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
