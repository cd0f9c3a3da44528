"""Command-line entry point.

Exit codes: 0 success, 1 input/config error, 2 computation error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .embedding import EmbeddingConfig
from .errors import InputError, StageError
from .ingest import CsvConfig
from .pipeline import PipelineConfig, execute, write_outputs
from .report import emit_report
from .rips import FULL
from .risk import RiskConfig

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2


def _epsilon(text):
    if text == FULL:
        return FULL
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive or 'full'")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="toporisk",
        description="Topological risk report for a price series (delay embedding + Rips persistence).",
    )
    p.add_argument("--input", required=True, help="CSV file with a header row")
    p.add_argument("--price-col", default="price")
    p.add_argument("--time-col", default=None, help="optional integer epoch-seconds column")
    p.add_argument("--embed-dim", type=int, default=5, help="embedding dimension m")
    p.add_argument("--lag", type=int, default=1, help="delay tau in samples")
    p.add_argument("--assumed-dim", type=int, default=None,
                   help="attractor dimension d; warns when m <= 2d")
    p.add_argument("--max-dim", type=int, default=2, help="largest simplex dimension")
    p.add_argument("--epsilon-max", type=_epsilon, default=FULL,
                   help="Rips threshold, or 'full' for the diameter")
    p.add_argument("--periods-per-year", type=float, default=365.0)
    p.add_argument("--horizon-days", type=float, default=30.0)
    p.add_argument("--l-max", type=int, default=150)
    p.add_argument("--delta", type=float, default=None, help="noise scale for the 2*delta cycle count")
    p.add_argument("--lambda-threshold", type=float, default=0.0)
    p.add_argument("--include-h0", action="store_true",
                   help="add finite H0 bars to the total-persistence spectrum")
    p.add_argument("--snapshot-eps", type=float, default=None,
                   help="edge-list snapshot scale for filtration_edges.csv")
    p.add_argument("--spectrum-bins", type=int, default=20)
    p.add_argument("--out-dir", default=None, help="write report and plot data here")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(args) -> PipelineConfig:
    return PipelineConfig(
        input_path=args.input,
        csv=CsvConfig(args.price_col, args.time_col),
        embedding=EmbeddingConfig(args.embed_dim, args.lag, args.assumed_dim),
        max_dim=args.max_dim,
        epsilon_max=args.epsilon_max,
        risk=RiskConfig(
            periods_per_year=args.periods_per_year,
            horizon_days=args.horizon_days,
            l_max=args.l_max,
            delta=args.delta,
            lambda_threshold=args.lambda_threshold,
        ),
        lambda_dims=(0, 1) if args.include_h0 else (1,),
        out_dir=args.out_dir,
        report_format=args.format,
        snapshot_eps=args.snapshot_eps,
        spectrum_bins=args.spectrum_bins,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = config_from_args(args)
    except InputError as exc:
        print(f"[config] {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        result = execute(config)
        if config.out_dir is not None:
            try:
                write_outputs(result, config.out_dir, config.report_format,
                              config.snapshot_eps, config.spectrum_bins)
            except OSError as exc:
                raise StageError("output", InputError(str(exc))) from exc
    except StageError as exc:
        print(str(exc), file=sys.stderr)
        return exc.exit_code
    sys.stdout.buffer.write(emit_report(result.report, config.report_format))
    sys.stdout.flush()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
