"""Horizon volatility, complexity-risk ratio and the leverage map."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .diagram import (
    PersistenceDiagram,
    combined_spectrum,
    lifetimes,
    mean_lifetime,
    persistence_entropy,
    total_persistence,
)
from .errors import ConfigError, TooShort, WrongKind, ZeroVariance, ZeroVolatility
from .ingest import SeriesKind, TimeSeries

ENTROPY_DEFINITION = "shannon, natural log, of lifetimes normalized by total persistence"


class Regime(enum.Enum):
    STABLE_ATTRACTOR = "StableAttractor"
    STOCHASTIC = "Stochastic"


@dataclass(frozen=True)
class RiskConfig:
    periods_per_year: float = 365.0
    horizon_days: float = 30.0
    l_max: int = 150
    delta: Optional[float] = None
    lambda_threshold: float = 0.0

    def __post_init__(self):
        if not self.periods_per_year > 0:
            raise ConfigError(f"periods_per_year must be positive, got {self.periods_per_year}")
        if not self.horizon_days > 0:
            raise ConfigError(f"horizon_days must be positive, got {self.horizon_days}")
        if int(self.l_max) != self.l_max or self.l_max < 1:
            raise ConfigError(f"l_max must be an integer >= 1, got {self.l_max}")
        if self.delta is not None and not self.delta >= 0:
            raise ConfigError(f"delta must be non-negative, got {self.delta}")
        if not self.lambda_threshold >= 0:
            raise ConfigError(f"lambda_threshold must be non-negative, got {self.lambda_threshold}")


@dataclass(frozen=True)
class DimensionSummary:
    finite: int
    essential: int
    top_lifetimes: List[float]


@dataclass(frozen=True)
class RiskReport:
    lambda_total: float
    entropy: float
    mean_lifetime: float
    sigma_adj: float
    r_sn: float
    l_star: int
    l_max: int
    regime: Regime
    significant_cycles: Optional[int]
    diagram_summary: Dict[int, DimensionSummary] = field(default_factory=dict)
    lambda_dims: List[int] = field(default_factory=lambda: [1])
    entropy_definition: str = ENTROPY_DEFINITION


def horizon_volatility(returns: TimeSeries, config: RiskConfig) -> float:
    """Sample stddev of log-returns, annualized, then scaled to the horizon.

    sigma_h = std(r, ddof=1) * sqrt(periods_per_year) * sqrt(horizon_days / 365)
    """
    if returns.kind is not SeriesKind.LOG_RETURN:
        raise WrongKind(SeriesKind.LOG_RETURN.value, returns.kind.value)
    if len(returns) < 2:
        raise TooShort(2, len(returns))
    sd = float(np.std(returns.values, ddof=1))
    if not sd > 0:
        raise ZeroVariance()
    return sd * math.sqrt(config.periods_per_year) * math.sqrt(config.horizon_days / 365.0)


def complexity_risk_ratio(lambda_total: float, sigma_adj: float) -> float:
    if not sigma_adj > 0:
        raise ZeroVolatility()
    if lambda_total < 0:
        raise ValueError(f"total persistence must be non-negative, got {lambda_total}")
    return lambda_total / sigma_adj


def leverage_multiplier(r_sn: float, l_max: int) -> int:
    """clamp(round(r_sn / l_max), 1, l_max), rounding halves away from zero."""
    if r_sn < 0:
        raise ValueError(f"r_sn must be non-negative, got {r_sn}")
    if l_max < 1:
        raise ValueError(f"l_max must be >= 1, got {l_max}")
    return int(min(max(math.floor(r_sn / l_max + 0.5), 1), l_max))


def classify_regime(lambda_total: float, config: RiskConfig) -> Regime:
    if lambda_total > config.lambda_threshold:
        return Regime.STABLE_ATTRACTOR
    return Regime.STOCHASTIC


def significant_cycles(diagram: PersistenceDiagram, delta: float) -> int:
    """Finite points whose persistence exceeds twice the noise scale."""
    if delta < 0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    return int(np.count_nonzero(lifetimes(diagram).lifetimes > 2.0 * delta))


def summarize_diagrams(diagrams: Sequence[PersistenceDiagram], top: int = 5) -> Dict[int, DimensionSummary]:
    out = {}
    for dgm in diagrams:
        lt = np.sort(lifetimes(dgm).lifetimes)[::-1]
        out[dgm.dim] = DimensionSummary(len(dgm.finite), len(dgm.essential), lt[:top].tolist())
    return out


def assemble_report(
    diagrams: Sequence[PersistenceDiagram],
    returns: TimeSeries,
    config: RiskConfig = RiskConfig(),
    lambda_dims: Sequence[int] = (1,),
) -> RiskReport:
    """Metrics on the chosen dimensions' lifetimes plus the leverage decision.

    A Stochastic regime pins the multiplier to 1 regardless of the ratio.
    """
    spectrum = combined_spectrum(diagrams, dims=tuple(lambda_dims))
    lam = total_persistence(spectrum)
    sigma = horizon_volatility(returns, config)
    r_sn = complexity_risk_ratio(lam, sigma)
    regime = classify_regime(lam, config)
    l_star = leverage_multiplier(r_sn, config.l_max) if regime is Regime.STABLE_ATTRACTOR else 1
    sig = None
    if config.delta is not None:
        h1 = [d for d in diagrams if d.dim == 1]
        sig = significant_cycles(h1[0], config.delta) if h1 else 0
    return RiskReport(
        lambda_total=lam,
        entropy=persistence_entropy(spectrum),
        mean_lifetime=mean_lifetime(spectrum),
        sigma_adj=sigma,
        r_sn=r_sn,
        l_star=l_star,
        l_max=int(config.l_max),
        regime=regime,
        significant_cycles=sig,
        diagram_summary=summarize_diagrams(diagrams),
        lambda_dims=sorted(int(k) for k in lambda_dims),
    )
