"""Report serialization (canonical JSON and a text summary)."""

from __future__ import annotations

import json

from .risk import DimensionSummary, Regime, RiskReport


def report_to_dict(report: RiskReport) -> dict:
    return {
        "lambda_total": report.lambda_total,
        "entropy": report.entropy,
        "entropy_definition": report.entropy_definition,
        "mean_lifetime": report.mean_lifetime,
        "sigma_adj": report.sigma_adj,
        "r_sn": report.r_sn,
        "l_star": report.l_star,
        "l_max": report.l_max,
        "regime": report.regime.value,
        "significant_cycles": report.significant_cycles,
        "lambda_dims": list(report.lambda_dims),
        "diagram_summary": {
            str(k): {
                "finite": s.finite,
                "essential": s.essential,
                "top_lifetimes": list(s.top_lifetimes),
            }
            for k, s in sorted(report.diagram_summary.items())
        },
    }


def report_from_dict(data: dict) -> RiskReport:
    return RiskReport(
        lambda_total=float(data["lambda_total"]),
        entropy=float(data["entropy"]),
        mean_lifetime=float(data["mean_lifetime"]),
        sigma_adj=float(data["sigma_adj"]),
        r_sn=float(data["r_sn"]),
        l_star=int(data["l_star"]),
        l_max=int(data["l_max"]),
        regime=Regime(data["regime"]),
        significant_cycles=data["significant_cycles"],
        diagram_summary={
            int(k): DimensionSummary(v["finite"], v["essential"], [float(x) for x in v["top_lifetimes"]])
            for k, v in data["diagram_summary"].items()
        },
        lambda_dims=[int(k) for k in data["lambda_dims"]],
        entropy_definition=data["entropy_definition"],
    )


def _g(x):
    return f"{x:.6g}"


def _text(report: RiskReport) -> str:
    dims = ",".join(f"H{k}" for k in report.lambda_dims)
    lines = [
        "Topological risk report",
        f"  total persistence ({dims}): {_g(report.lambda_total)}",
        f"  persistence entropy:        {_g(report.entropy)}  [{report.entropy_definition}]",
        f"  mean lifetime:              {_g(report.mean_lifetime)}",
        f"  horizon volatility:         {_g(report.sigma_adj)}",
        f"  complexity-risk ratio:      {_g(report.r_sn)}",
        f"  regime:                     {report.regime.value}",
    ]
    if report.significant_cycles is not None:
        lines.append(f"  cycles beyond 2*delta:      {report.significant_cycles}")
    lines.append(f"  suggested leverage:         {report.l_star}x (cap {report.l_max}x)")
    lines.append("  diagrams:")
    for k, s in sorted(report.diagram_summary.items()):
        top = ", ".join(_g(x) for x in s.top_lifetimes) or "-"
        lines.append(f"    H{k}: {s.finite} finite, {s.essential} essential; top lifetimes: {top}")
    return "\n".join(lines) + "\n"


def emit_report(report: RiskReport, fmt: str = "json") -> bytes:
    """Serialize a report. JSON output has sorted keys and round-trips exactly."""
    if fmt == "json":
        return (json.dumps(report_to_dict(report), sort_keys=True, indent=2) + "\n").encode()
    if fmt == "text":
        return _text(report).encode()
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(raw: bytes) -> RiskReport:
    return report_from_dict(json.loads(raw))
