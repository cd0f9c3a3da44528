"""Delay-coordinate embedding of a scalar series."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError, SeriesTooShort
from .ingest import TimeSeries

OK = "ok"
WARN_LOW_DIM = "m <= 2d"


@dataclass(frozen=True)
class EmbeddingConfig:
    m: int = 5
    tau: int = 1
    assumed_attractor_dim: Optional[int] = None

    def __post_init__(self):
        if self.m < 1 or self.tau < 1:
            raise ConfigError(f"need m >= 1 and tau >= 1, got m={self.m}, tau={self.tau}")
        d = self.assumed_attractor_dim
        if d is not None and d < 1:
            raise ConfigError(f"assumed attractor dimension must be positive, got {d}")

    @property
    def low_dim_warning(self) -> bool:
        return check_embedding_dim(self) != OK


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"point cloud must be a non-empty N x m matrix, got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point cloud has non-finite entries")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def scaled(self, c: float) -> "PointCloud":
        return PointCloud(self.points * c)


def check_embedding_dim(config: EmbeddingConfig) -> str:
    """Return ``OK`` unless an attractor dimension d is given and m <= 2d."""
    d = config.assumed_attractor_dim
    if d is None or config.m > 2 * d:
        return OK
    return WARN_LOW_DIM


def delay_embed(series: TimeSeries, config: EmbeddingConfig = EmbeddingConfig()) -> PointCloud:
    """Forward delay map: point t is (x[t], x[t+tau], ..., x[t+(m-1)tau])."""
    x = np.asarray(series.values if isinstance(series, TimeSeries) else series, dtype=np.float64)
    span = (config.m - 1) * config.tau
    if len(x) < span + 1:
        raise SeriesTooShort(span + 1, len(x))
    n = len(x) - span
    cols = [x[j * config.tau : j * config.tau + n] for j in range(config.m)]
    return PointCloud(np.column_stack(cols))
