"""Topological risk metrics for price series.

Delay-embed log-returns, compute Vietoris-Rips persistent homology, summarize
the diagrams and turn total persistence into a leverage multiplier.
"""

from .diagram import (
    PersistenceDiagram,
    Spectrum,
    bottleneck_distance,
    hausdorff_distance,
    lifetimes,
    mean_lifetime,
    persistence_entropy,
    total_persistence,
)
from .embedding import EmbeddingConfig, PointCloud, check_embedding_dim, delay_embed
from .homology import (
    BoundaryMatrix,
    Pairing,
    build_boundary_matrix,
    extract_diagrams,
    persistence_diagrams,
    reduce,
    reduce_naive,
)
from .ingest import CsvConfig, SeriesKind, TimeSeries, log_returns, parse_price_csv, zscore_normalize
from .pipeline import PipelineConfig, emit_plot_data, execute, run_pipeline
from .report import emit_report, parse_report
from .rips import DistanceMatrix, Filtration, build_rips_filtration, pairwise_distances
from .risk import (
    Regime,
    RiskConfig,
    RiskReport,
    assemble_report,
    classify_regime,
    complexity_risk_ratio,
    horizon_volatility,
    leverage_multiplier,
    significant_cycles,
)

__version__ = "0.1.0"
