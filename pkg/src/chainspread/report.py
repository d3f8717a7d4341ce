"""Report assembly and delimited rendering.

Numbers round-trip through a fixed precision: 3 decimals for coefficients
and standard errors, 4 for R^2, integer basis points for R^2 deltas. The
printed delta is computed from the printed (rounded) R^2 values so the two
always agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import UndefinedMetricError
from .graph import SupplyChainGraph
from .metrics import concentration_profile, influence_profile
from .transform import VARIABLES, DesignMatrix, exclude_financials
from .wls import FitResult, delta_r2_bps, significance_stars


@dataclass(frozen=True)
class ModelReport:
    name: str
    column_names: tuple[str, ...]
    coefficients: tuple[float, ...]
    std_errors: tuple[float, ...]
    p_values: tuple[float, ...]
    n: int
    n_dropped: int
    r2: float
    adj_r2: float


@dataclass(frozen=True)
class RegressionReport:
    models: tuple[ModelReport, ...]
    baseline: str


def model_report(name: str, design: DesignMatrix, result: FitResult) -> ModelReport:
    # drops due to missing-variable policy, not the base sample filters
    base_reasons = {"financial_sector", "missing_cds", "missing_dp", "missing_market_cap"}
    n_dropped = sum(1 for _, reason in design.dropped if reason not in base_reasons)
    return ModelReport(
        name=name,
        column_names=design.column_names,
        coefficients=tuple(result.coefficients),
        std_errors=tuple(result.std_errors),
        p_values=tuple(result.p_values),
        n=result.n,
        n_dropped=n_dropped,
        r2=result.r2,
        adj_r2=result.adj_r2,
    )


# Reading order: intercept, concentration, influence, controls, indicators
_VARIABLE_RANK = {"intercept": 0}
_VARIABLE_RANK.update({name: i for i, (name, _, _) in enumerate(VARIABLES, start=1)})


def _column_order(name: str):
    base = name
    for suffix in ("_log1p", "_log"):
        if base.endswith(suffix):
            base = base[: -len(suffix)]
            break
    if base in _VARIABLE_RANK:
        return (0, _VARIABLE_RANK[base], name)
    if name.startswith("sector["):
        return (1, 0, name)
    if name.startswith("country["):
        return (2, 0, name)
    return (3, 0, name)


def render_report(report: RegressionReport) -> str:
    """Coefficient table then statistics block, comma separated."""
    models = report.models
    seen: set[str] = set()
    variables: list[str] = []
    for m in models:
        for name in m.column_names:
            if name not in seen:
                seen.add(name)
                variables.append(name)
    variables.sort(key=_column_order)

    lines = []
    header = ["variable"]
    for m in models:
        header += [f"{m.name}_estimate", f"{m.name}_stars", f"{m.name}_se"]
    lines.append(",".join(header))
    for var in variables:
        cells = [var]
        for m in models:
            if var in m.column_names:
                i = m.column_names.index(var)
                cells += [f"{m.coefficients[i]:.3f}", significance_stars(m.p_values[i]), f"{m.std_errors[i]:.3f}"]
            else:
                cells += ["", "", ""]
        lines.append(",".join(cells))

    lines.append("")
    lines.append(",".join(["statistic"] + [m.name for m in models]))
    lines.append(",".join(["n"] + [str(m.n) for m in models]))
    lines.append(",".join(["dropped"] + [str(m.n_dropped) for m in models]))
    printed_r2 = {m.name: round(m.r2, 4) for m in models}
    lines.append(",".join(["r2"] + [f"{printed_r2[m.name]:.4f}" for m in models]))
    lines.append(",".join(["adj_r2"] + [f"{m.adj_r2:.4f}" for m in models]))
    base = printed_r2[report.baseline]
    deltas = [
        "" if m.name == report.baseline else str(delta_r2_bps(base, printed_r2[m.name])) for m in models
    ]
    lines.append(",".join([f"delta_r2_bps_vs_{report.baseline}"] + deltas))
    return "\n".join(lines) + "\n"


def emit_histogram(values: Sequence[float], n_bins: int) -> list[tuple[float, float, int]]:
    """Equal-width bins covering [min, max]; the top edge is inclusive."""
    if len(values) == 0:
        raise UndefinedMetricError("histogram of an empty sample")
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    lo, hi = min(values), max(values)
    if lo == hi:
        return [(lo, hi, len(values))] + [(hi, hi, 0)] * (n_bins - 1)
    counts, edges = np.histogram(np.asarray(values, dtype=float), bins=n_bins, range=(lo, hi))
    return [(float(edges[i]), float(edges[i + 1]), int(counts[i])) for i in range(n_bins)]


def render_histogram(name: str, bins: list[tuple[float, float, int]]) -> str:
    lines = [f"variable,{name}", "lower,upper,count"]
    lines += [f"{lo:.6g},{hi:.6g},{count}" for lo, hi, count in bins]
    return "\n".join(lines) + "\n"


# the Table-3 style descriptive variables, in reading order
DESCRIPTIVE_VARIABLES = [
    "cds_log",
    "supplier_count_log1p",
    "customer_count_log1p",
    "supplier_avg_dp_log",
    "customer_avg_dp_log",
    "dp_log",
    "market_cap_log",
]


def descriptive_columns(graph: SupplyChainGraph, keep_financials: bool = False) -> dict[str, list[Optional[float]]]:
    """Log-space descriptive variables over the CDS sample (None = missing)."""
    companies = sorted(graph.companies.values(), key=lambda c: c.id)
    if not keep_financials:
        companies, _ = exclude_financials(companies)
    companies = [c for c in companies if c.cds_5y_bps is not None]

    cols: dict[str, list[Optional[float]]] = {v: [] for v in DESCRIPTIVE_VARIABLES}
    for c in companies:
        cols["cds_log"].append(math.log(c.cds_5y_bps))
        cols["dp_log"].append(math.log(c.default_prob) if c.default_prob else None)
        cols["market_cap_log"].append(
            math.log(c.market_cap_billions) if c.market_cap_billions else None
        )
        for side in ("supplier", "customer"):
            prof = concentration_profile(graph, c.id, side)
            cols[f"{side}_count_log1p"].append(math.log1p(prof.n_partners))
            infl = influence_profile(graph, c.id, side)
            cols[f"{side}_avg_dp_log"].append(math.log(infl.avg_dp) if infl.avg_dp else None)
    return cols


def emit_descriptives(columns: dict[str, list[Optional[float]]]):
    """Means/SDs per column and pairwise complete-case correlations.

    Returns (stats, corr): stats maps name -> (n, mean, sd); corr maps
    (name_a, name_b) -> correlation or None when undefined.
    """
    names = list(columns)
    stats = {}
    for name in names:
        obs = np.array([v for v in columns[name] if v is not None], dtype=float)
        mean = float(obs.mean()) if obs.size else float("nan")
        sd = float(obs.std(ddof=1)) if obs.size > 1 else float("nan")
        stats[name] = (int(obs.size), mean, sd)

    corr: dict[tuple[str, str], Optional[float]] = {}
    for i, a in enumerate(names):
        for b in names[: i + 1]:
            pairs = [
                (x, y) for x, y in zip(columns[a], columns[b]) if x is not None and y is not None
            ]
            if a == b:
                corr[(a, b)] = 1.0
                continue
            if len(pairs) < 2:
                corr[(a, b)] = corr[(b, a)] = None
                continue
            xs = np.array([p[0] for p in pairs])
            ys = np.array([p[1] for p in pairs])
            if xs.std() == 0.0 or ys.std() == 0.0:
                corr[(a, b)] = corr[(b, a)] = None
                continue
            value = float(np.corrcoef(xs, ys)[0, 1])
            corr[(a, b)] = corr[(b, a)] = value
    return stats, corr


def render_descriptives(columns: dict[str, list[Optional[float]]]) -> str:
    names = list(columns)
    stats, corr = emit_descriptives(columns)
    lines = [",".join(["variable", "n", "mean", "sd"] + names)]
    for a in names:
        n, mean, sd = stats[a]
        cells = [a, str(n), f"{mean:.4f}", f"{sd:.4f}"]
        for b in names:
            value = corr.get((a, b))
            cells.append("" if value is None else f"{value:.4f}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def render_metrics(graph: SupplyChainGraph) -> str:
    """One row per company and side with the five concentration metrics and influence averages."""
    lines = [
        "company_id,side,n_partners,n_public_partners,n_quantified,share_sum,hhi,"
        "avg_dp,wavg_dp,n_with_dp,n_weightable"
    ]
    for cid in sorted(graph.companies):
        for side in ("customer", "supplier"):
            prof = concentration_profile(graph, cid, side)
            infl = influence_profile(graph, cid, side)
            lines.append(
                ",".join(
                    [
                        cid,
                        side,
                        str(prof.n_partners),
                        str(prof.n_public_partners),
                        str(prof.n_quantified),
                        f"{prof.share_sum:.6f}",
                        "" if prof.hhi is None else f"{prof.hhi:.6f}",
                        "" if infl.avg_dp is None else f"{infl.avg_dp:.8f}",
                        "" if infl.wavg_dp is None else f"{infl.wavg_dp:.8f}",
                        str(infl.n_with_dp),
                        str(infl.n_weightable),
                    ]
                )
            )
    return "\n".join(lines) + "\n"
