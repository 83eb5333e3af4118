"""Command-line interface: ``analyze``, ``sweep``, ``gen`` and ``prng-test``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from .chaos import (
    DEFAULT_COUPLING,
    DEFAULT_DIMENSION,
    ChaosRNG,
    autocorrelation,
    parse_couplings,
    parse_seed_hex,
    uniformity_chi_square,
)
from .cluster import Method
from .faker import DEFAULT_MIX, variations
from .name_stats import DEFAULT_SIM_THRESHOLD, NameProfile
from .pipeline import (
    DEFAULT_SEED,
    InputError,
    RunConfig,
    emit_reports,
    run_detection,
    silhouette_sweep,
    SilhouetteReport,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NUMERIC = 3

log = logging.getLogger("namechaos")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected lo,hi but got {text!r}")
    return float(parts[0]), float(parts[1])


def _seed(text: str) -> int:
    try:
        return parse_seed_hex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _couplings(text: str) -> tuple[float, ...]:
    try:
        values = parse_couplings(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not values or any(not -1.0 <= v <= 1.0 for v in values):
        raise argparse.ArgumentTypeError("couplings must be a non-empty list of values in [-1, 1]")
    return values


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--names", type=Path, default=None, help="one name per line (default: bundled 20 names)")
    p.add_argument("--variations", type=int, default=9, help="fake variants per real name")
    p.add_argument("--seed-hex", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--couplings", type=_couplings, default=(DEFAULT_COUPLING,) * DEFAULT_DIMENSION)
    p.add_argument("--sim-threshold", type=float, default=DEFAULT_SIM_THRESHOLD)
    p.add_argument("--mix", type=float, default=DEFAULT_MIX, help="share of repeat variants among fakes")
    p.add_argument("--profile-unique", type=_pair, default=NameProfile().unique_range)
    p.add_argument("--profile-length", type=_pair, default=NameProfile().length_range)
    p.add_argument("--profile-vowel", type=_pair, default=NameProfile().vowel_range)
    p.add_argument("--out-dir", type=Path, default=Path("."))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="namechaos", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="cluster real and synthetic names and flag suspicious ones")
    _add_common(p)
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.KMEANS.value)
    p.add_argument("--k", type=int, default=3)

    p = sub.add_parser("sweep", help="mean silhouette over a range of cluster counts")
    _add_common(p)
    p.add_argument("--kmin", type=int, default=2)
    p.add_argument("--kmax", type=int, default=20)
    p.add_argument("--methods", default="kmeans,agglomerative")

    p = sub.add_parser("gen", help="print fake variations of a name")
    p.add_argument("--name", required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--mix", type=float, default=DEFAULT_MIX)
    p.add_argument("--seed-hex", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--couplings", type=_couplings, default=(DEFAULT_COUPLING,) * DEFAULT_DIMENSION)

    p = sub.add_parser("prng-test", help="chi-square and autocorrelation of the generator")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--bins", type=int, default=100)
    p.add_argument("--lags", type=int, default=10)
    p.add_argument("--seed-hex", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--couplings", type=_couplings, default=(DEFAULT_COUPLING,) * DEFAULT_DIMENSION)
    return parser


def _config(args: argparse.Namespace, **extra) -> RunConfig:
    try:
        profile = NameProfile(args.profile_unique, args.profile_length, args.profile_vowel)
        return RunConfig(
            names_path=args.names,
            variations_per_name=args.variations,
            sim_threshold=args.sim_threshold,
            profile=profile,
            seed=args.seed_hex,
            couplings=args.couplings,
            mix=args.mix,
            output_dir=args.out_dir,
            **extra,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_analyze(args: argparse.Namespace) -> int:
    config = _config(args, method=args.method, k=args.k)
    report = run_detection(config)
    sweep = SilhouetteReport()
    if report.mean_silhouette is not None:
        sweep.rows.append((report.k, report.method, report.mean_silhouette))
    for path in emit_reports(report, sweep, config.output_dir):
        log.info("wrote %s", path)
    if not report.converged:
        print("warning: clustering did not converge", file=sys.stderr)
    print(
        f"{len(report.rows)} names, {len(report.flagged)} flagged "
        f"(cluster {report.flagged_cluster}), mean silhouette {report.mean_silhouette}"
    )
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        methods = tuple(Method(m.strip()) for m in args.methods.split(",") if m.strip())
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    config = _config(args, k_range=(args.kmin, args.kmax), sweep_methods=methods)
    sweep = silhouette_sweep(config)
    for k, method, reason in sweep.skipped:
        print(f"skipped k={k} method={method.value}: {reason}", file=sys.stderr)
    for path in emit_reports(None, sweep, config.output_dir):
        log.info("wrote %s", path)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.count < 0 or not 0.0 <= args.mix <= 1.0:
        raise UsageError("--count must be >= 0 and --mix in [0, 1]")
    rng = ChaosRNG.from_seed(args.seed_hex, args.couplings)
    for rec in variations(args.name, args.count, rng, args.mix):
        print(f"{rec.name}\t{rec.origin.value}")
    return EXIT_OK


def cmd_prng_test(args: argparse.Namespace) -> int:
    if args.samples < 1 or args.bins < 2 or not 0 <= args.lags < args.samples:
        raise UsageError("need --samples >= 1, --bins >= 2 and 0 <= --lags < --samples")
    rng = ChaosRNG.from_seed(args.seed_hex, args.couplings)
    seq = rng.generate(args.samples)[:, 0]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["metric", "lag", "value"])
    writer.writerow(["chi_square", "", f"{uniformity_chi_square(seq, args.bins):.6f}"])
    for lag in range(1, args.lags + 1):
        writer.writerow(["autocorrelation", lag, f"{autocorrelation(seq, lag):.6f}"])
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "gen": cmd_gen,
    "prng-test": cmd_prng_test,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
