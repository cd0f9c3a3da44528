import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from toporisk.diagram import PersistenceDiagram
from toporisk.errors import ConfigError, WrongKind, ZeroVariance, ZeroVolatility
from toporisk.ingest import SeriesKind, TimeSeries
from toporisk.risk import (
    Regime,
    RiskConfig,
    assemble_report,
    classify_regime,
    complexity_risk_ratio,
    horizon_volatility,
    leverage_multiplier,
    significant_cycles,
)

SQRT2 = math.sqrt(2)
VOL_365 = 0.382099463490856003583  # 0.02 * sqrt(365), mpmath


def returns_with_sample_std(sd):
    # sample std of [a, -a] is a * sqrt(2)
    a = sd / SQRT2
    return TimeSeries([a, -a], SeriesKind.LOG_RETURN)


def test_horizon_volatility_examples():
    r = returns_with_sample_std(0.02)
    assert horizon_volatility(r, RiskConfig(365, 365)) == pytest.approx(VOL_365, rel=1e-14)
    assert horizon_volatility(r, RiskConfig(365, 1)) == pytest.approx(0.02, rel=1e-14)
    with pytest.raises(ZeroVariance):
        horizon_volatility(TimeSeries([0.01] * 5, SeriesKind.LOG_RETURN), RiskConfig())
    with pytest.raises(WrongKind):
        horizon_volatility(TimeSeries([1.0, 2.0]), RiskConfig())


@given(st.floats(0.01, 1e4))
def test_horizon_doubling(h):
    r = TimeSeries([0.01, -0.02, 0.005, 0.03], SeriesKind.LOG_RETURN)
    ratio = horizon_volatility(r, RiskConfig(252, 2 * h)) / horizon_volatility(r, RiskConfig(252, h))
    assert ratio == pytest.approx(SQRT2, rel=1e-14)


def test_ratio_examples():
    assert complexity_risk_ratio(869.87 * 0.3, 0.3) == pytest.approx(869.87, rel=1e-15)
    assert complexity_risk_ratio(0, 0.5) == 0
    assert complexity_risk_ratio(1, 0.25) == 4
    with pytest.raises(ZeroVolatility):
        complexity_risk_ratio(1, 0)


@pytest.mark.parametrize(
    "r_sn, l_max, expected",
    [(869.87, 150, 6), (0, 150, 1), (0, 1, 1), (1e6, 150, 150), (225, 150, 2), (224.99, 150, 1), (75, 10, 8)],
)
def test_leverage_examples(r_sn, l_max, expected):
    assert leverage_multiplier(r_sn, l_max) == expected


@given(st.floats(0, 1e9), st.floats(0, 1e9), st.integers(1, 500))
def test_leverage_monotone_and_bounded(a, b, l_max):
    lo, hi = sorted((a, b))
    la, lb = leverage_multiplier(lo, l_max), leverage_multiplier(hi, l_max)
    assert 1 <= la <= lb <= l_max


@pytest.mark.parametrize("lam, expected", [(5, Regime.STABLE_ATTRACTOR), (0, Regime.STOCHASTIC), (1, Regime.STOCHASTIC)])
def test_classify(lam, expected):
    assert classify_regime(lam, RiskConfig(lambda_threshold=1)) is expected


def test_significant_cycles_examples():
    sq = PersistenceDiagram(1, [(1, SQRT2)])
    assert significant_cycles(sq, 0.1) == 1
    assert significant_cycles(sq, 0.3) == 0
    dgm = PersistenceDiagram(1, [(0.1, 0.2), (0.3, 0.9), (0.5, math.inf)])
    assert significant_cycles(dgm, 0) == 2


@given(st.lists(st.tuples(st.floats(0, 3), st.floats(1e-3, 2)), max_size=20), st.floats(0, 2), st.floats(0, 2))
def test_significant_cycles_nonincreasing(pts, d1, d2):
    dgm = PersistenceDiagram(1, [(b, b + l) for b, l in pts])
    lo, hi = sorted((d1, d2))
    assert significant_cycles(dgm, hi) <= significant_cycles(dgm, lo)


@pytest.mark.parametrize(
    "kw", [dict(periods_per_year=0), dict(horizon_days=-1), dict(l_max=0), dict(delta=-0.1), dict(l_max=1.5)]
)
def test_bad_config(kw):
    with pytest.raises(ConfigError):
        RiskConfig(**kw)


def _report(lam_bars, threshold=0.0, delta=None):
    dgms = [PersistenceDiagram(0, [(0, 0.3), (0, math.inf)]), PersistenceDiagram(1, lam_bars)]
    r = TimeSeries([0.01, -0.02, 0.015, -0.005], SeriesKind.LOG_RETURN)
    return assemble_report(dgms, r, RiskConfig(lambda_threshold=threshold, delta=delta, l_max=3))


def test_report_consistency():
    rep = _report([(0.1, 2.0), (0.5, 0.9)], delta=0.1)
    assert rep.lambda_total == pytest.approx(2.3, rel=1e-15)
    assert abs(rep.r_sn - rep.lambda_total / rep.sigma_adj) <= 1e-12 * rep.r_sn
    assert rep.l_star == leverage_multiplier(rep.r_sn, rep.l_max)
    assert rep.significant_cycles == 2
    assert rep.diagram_summary[1].top_lifetimes == pytest.approx([1.9, 0.4])
    assert rep.diagram_summary[0].essential == 1


def test_stochastic_forces_unit_leverage():
    rep = _report([(0.1, 2.0)], threshold=5.0)
    assert rep.regime is Regime.STOCHASTIC and rep.l_star == 1
    empty = _report([])
    assert empty.lambda_total == 0 and empty.regime is Regime.STOCHASTIC and empty.l_star == 1


def test_include_h0():
    dgms = [PersistenceDiagram(0, [(0, 0.3), (0, math.inf)]), PersistenceDiagram(1, [(1, 2)])]
    r = TimeSeries([0.01, -0.02, 0.015], SeriesKind.LOG_RETURN)
    rep = assemble_report(dgms, r, RiskConfig(), lambda_dims=(0, 1))
    assert rep.lambda_total == pytest.approx(1.3)
    assert rep.lambda_dims == [0, 1]
