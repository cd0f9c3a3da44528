"""End-to-end run: prices -> diagrams -> risk report, plus plot-data export."""

from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .diagram import PersistenceDiagram, combined_spectrum, diagram_rows
from .embedding import OK, EmbeddingConfig, PointCloud, check_embedding_dim, delay_embed
from .errors import IngestError, StageError, ToporiskError
from .homology import Pairing, build_boundary_matrix, extract_diagrams, reduce
from .ingest import CsvConfig, TimeSeries, log_returns, parse_price_csv, zscore_normalize
from .report import emit_report
from .rips import FULL, DistanceMatrix, Filtration, build_rips_filtration, pairwise_distances
from .risk import RiskConfig, RiskReport, assemble_report

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineConfig:
    input_path: Optional[Union[str, Path]] = None
    csv: CsvConfig = CsvConfig()
    embedding: EmbeddingConfig = EmbeddingConfig()
    max_dim: int = 2
    epsilon_max: Union[float, str] = FULL
    risk: RiskConfig = RiskConfig()
    lambda_dims: Tuple[int, ...] = (1,)
    out_dir: Optional[Union[str, Path]] = None
    report_format: str = "json"
    snapshot_eps: Optional[float] = None
    spectrum_bins: int = 20


@dataclass
class PipelineResult:
    prices: TimeSeries
    returns: TimeSeries
    normalized: TimeSeries
    cloud: PointCloud
    distances: DistanceMatrix
    filtration: Filtration
    pairing: Pairing
    diagrams: List[PersistenceDiagram]
    report: RiskReport
    config: PipelineConfig = field(repr=False, default=None)


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except StageError:
        raise
    except (ToporiskError, ValueError, OSError) as exc:
        raise StageError(name, exc) from exc


def _read(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc.strerror}") from None


def execute(config: PipelineConfig, raw: Optional[bytes] = None) -> PipelineResult:
    """Run every stage and keep the intermediates.

    ``raw`` overrides reading ``config.input_path``. Any failure is re-raised
    as a ``StageError`` naming the stage.
    """
    if raw is None:
        raw = _stage("ingest", _read, config.input_path)
    prices = _stage("ingest", parse_price_csv, raw, config.csv)
    returns = _stage("returns", log_returns, prices)
    normalized = _stage("normalize", zscore_normalize, returns)
    if check_embedding_dim(config.embedding) != OK:
        log.warning(
            "embedding dimension m=%d is not above 2d=%d",
            config.embedding.m,
            2 * config.embedding.assumed_attractor_dim,
        )
    cloud = _stage("embedding", delay_embed, normalized, config.embedding)
    return analyze_cloud(cloud, returns, config, prices=prices, normalized=normalized)


def analyze_cloud(
    cloud: PointCloud,
    returns: TimeSeries,
    config: PipelineConfig = PipelineConfig(),
    prices: Optional[TimeSeries] = None,
    normalized: Optional[TimeSeries] = None,
) -> PipelineResult:
    """Distances through risk report for an already embedded cloud."""
    dist = _stage("distances", pairwise_distances, cloud)
    filt = _stage("rips", build_rips_filtration, dist, config.max_dim, config.epsilon_max)
    matrix = _stage("boundary", build_boundary_matrix, filt)
    pairing = _stage("reduction", reduce, matrix)
    del matrix
    diagrams = _stage("diagrams", extract_diagrams, pairing, filt, max(config.max_dim - 1, 0))
    report = _stage("risk", assemble_report, diagrams, returns, config.risk, config.lambda_dims)
    log.info("pipeline done: %d points, %d simplices", len(cloud), len(filt))
    return PipelineResult(prices, returns, normalized, cloud, dist, filt, pairing, diagrams, report, config)


def run_pipeline(config: PipelineConfig, raw: Optional[bytes] = None) -> RiskReport:
    return execute(config, raw).report


# -- plot data -----------------------------------------------------------------------


def _num(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    return repr(x) if math.isfinite(x) else "inf"


def _write_csv(path: Path, header: Sequence[str], rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_num(v) for v in row) + "\n")


def default_snapshot(diagrams: Sequence[PersistenceDiagram], filtration: Filtration) -> float:
    """Mid-life of the most persistent H1 bar, else the median edge length."""
    for dgm in diagrams:
        if dgm.dim == 1 and len(dgm.finite):
            fin = dgm.finite
            i = int(np.argmax(fin[:, 1] - fin[:, 0]))
            return float((fin[i, 0] + fin[i, 1]) / 2)
    _, _, vals = filtration.edges()
    return float(np.median(vals)) if len(vals) else 0.0


def emit_plot_data(result: PipelineResult, output_dir, snapshot_eps=None, spectrum_bins=20) -> List[Path]:
    """Write the dashboard panels as CSV data files; returns the paths written."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not os.access(out, os.W_OK):
        raise OSError(f"output directory {out} is not writable")
    written = []

    def path(name):
        p = out / name
        written.append(p)
        return p

    r = result.returns
    t = r.timestamps if r.timestamps is not None else np.arange(len(r))
    _write_csv(path("returns.csv"), ["t", "r_t"], zip(t.tolist(), r.values.tolist()))

    pts = result.cloud.points[:, :3]
    _write_csv(path("phase_space.csv"), [f"x{q + 1}" for q in range(pts.shape[1])], pts.tolist())

    eps = default_snapshot(result.diagrams, result.filtration) if snapshot_eps is None else snapshot_eps
    i, j, v = result.filtration.edges(eps)
    _write_csv(path("filtration_edges.csv"), ["i", "j", "epsilon"], zip(i.tolist(), j.tolist(), v.tolist()))

    lt = combined_spectrum(result.diagrams, dims=tuple(result.report.lambda_dims)).lifetimes
    rows = []
    if len(lt):
        counts, edges = np.histogram(lt, bins=spectrum_bins)
        rows = zip(edges[:-1].tolist(), edges[1:].tolist(), counts.tolist())
    _write_csv(path("spectrum.csv"), ["bin_left", "bin_right", "count"], rows)

    _write_csv(
        path("diagram.csv"),
        ["dim", "birth", "death"],
        ((dgm.dim, b, d) for dgm in result.diagrams for b, d in dgm.points.tolist()),
    )

    rep = result.report
    _write_csv(
        path("risk.csv"),
        ["lambda", "sigma_adj", "r_sn", "l_star", "l_max"],
        [(rep.lambda_total, rep.sigma_adj, rep.r_sn, rep.l_star, rep.l_max)],
    )

    with open(path("diagrams.json"), "w", encoding="utf-8", newline="") as fh:
        fh.write(json.dumps(diagram_rows(result.diagrams)) + "\n")
    return written


def write_outputs(result: PipelineResult, out_dir, fmt="json", snapshot_eps=None, spectrum_bins=20):
    paths = emit_plot_data(result, out_dir, snapshot_eps, spectrum_bins)
    name = "report.json" if fmt == "json" else "report.txt"
    p = Path(out_dir) / name
    p.write_bytes(emit_report(result.report, fmt))
    return paths + [p]
