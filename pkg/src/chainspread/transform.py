"""From graph + model spec to a numeric design matrix.

Handles the sample filters (CDS, DP, market cap present; financial sector
excluded), per-variable transforms, mean imputation or row dropping for
influence variables, indicator expansion with fixed reference levels, and
reciprocal-log-market-cap observation weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, EmptyDesignError, SpecError, UnusableVariableError
from .graph import Company, SupplyChainGraph
from .metrics import concentration_profile, influence_profile

FINANCIALS_SECTOR = "Financials"
SECTOR_REFERENCE = "Industrials"
COUNTRY_REFERENCE = "US"
MCAP_FLOOR_BILLIONS = 1.05  # keeps ln(mcap) positive so weights stay bounded

LOG, LOG1P, IDENTITY = "log", "log1p", "identity"
MEAN_IMPUTE, DROP_ROWS = "mean_impute", "drop_rows"

# canonical variable order: concentration block, influence block, controls.
# (name, default transform, may be missing)
VARIABLES: list[tuple[str, str, bool]] = [
    ("supplier_count", LOG1P, False),
    ("customer_count", LOG1P, False),
    ("supplier_public_count", LOG1P, False),
    ("customer_public_count", LOG1P, False),
    ("supplier_quantified_count", LOG1P, False),
    ("customer_quantified_count", LOG1P, False),
    ("supplier_share_sum", IDENTITY, False),
    ("customer_share_sum", IDENTITY, False),
    ("supplier_hhi", IDENTITY, True),
    ("customer_hhi", IDENTITY, True),
    ("supplier_avg_dp", LOG, True),
    ("customer_avg_dp", LOG, True),
    ("supplier_wavg_dp", LOG, True),
    ("customer_wavg_dp", LOG, True),
    ("dp", LOG, False),
    ("market_cap", LOG, False),
]
RESPONSE_DEFAULT = "cds"
DEFAULT_TRANSFORMS = {name: tr for name, tr, _ in VARIABLES}
DEFAULT_TRANSFORMS[RESPONSE_DEFAULT] = LOG
_ORDER = {name: i for i, (name, _, _) in enumerate(VARIABLES)}


@dataclass(frozen=True)
class ModelSpec:
    name: str
    response: str = RESPONSE_DEFAULT
    predictors: tuple[str, ...] = ()
    transforms: dict[str, str] = field(default_factory=dict)
    missing_policy: dict[str, str] = field(default_factory=dict)
    include_sector_indicators: bool = True
    include_country_indicators: bool = True
    weighting: str = "reciprocal_log_mcap"

    def validate(self):
        known = set(DEFAULT_TRANSFORMS)
        if self.response not in known:
            raise SpecError(f"model {self.name}: unknown response {self.response!r}")
        seen = set()
        for p in self.predictors:
            if p not in known:
                raise SpecError(f"model {self.name}: unknown predictor {p!r}")
            if p == self.response:
                raise SpecError(f"model {self.name}: {p!r} is both response and predictor")
            if p in seen:
                raise SpecError(f"model {self.name}: predictor {p!r} listed twice")
            seen.add(p)
        for var, tr in self.transforms.items():
            if tr not in (LOG, LOG1P, IDENTITY):
                raise SpecError(f"model {self.name}: unknown transform {tr!r} for {var!r}")
        for var, pol in self.missing_policy.items():
            if pol not in (MEAN_IMPUTE, DROP_ROWS):
                raise SpecError(f"model {self.name}: unknown missing policy {pol!r} for {var!r}")
        if self.weighting not in ("reciprocal_log_mcap", "unweighted"):
            raise SpecError(f"model {self.name}: unknown weighting {self.weighting!r}")


@dataclass(frozen=True)
class DesignMatrix:
    column_names: tuple[str, ...]
    X: np.ndarray
    y: np.ndarray
    w: np.ndarray
    row_ids: tuple[str, ...]
    dropped: tuple[tuple[str, str], ...]
    n_imputed: dict[str, int]
    n_clamped_weights: int


def log_transform(x: float) -> float:
    if x <= 0.0:
        raise DomainError(f"log requires a positive value, got {x}")
    return math.log(x)


def log1p_count(x: float) -> float:
    if x < 0.0:
        raise DomainError(f"log1p count must be nonnegative, got {x}")
    return math.log1p(x)


def apply_transform(x: float, transform: str) -> float:
    if transform == LOG:
        return log_transform(x)
    if transform == LOG1P:
        return log1p_count(x)
    if transform == IDENTITY:
        return float(x)
    raise SpecError(f"unknown transform {transform!r}")


def exclude_financials(companies: list[Company]) -> tuple[list[Company], list[Company]]:
    """Split out the financial sector; input order is preserved in both halves."""
    kept, removed = [], []
    for c in companies:
        (removed if c.gics_sector == FINANCIALS_SECTOR else kept).append(c)
    return kept, removed


def observation_weight(market_cap_billions: float) -> tuple[float, bool]:
    """1 / ln(market cap), with the cap floored so the weight stays bounded.

    Returns (weight, clamped) so callers can flag floored observations.
    """
    if market_cap_billions <= 0.0:
        raise DomainError(f"market cap must be positive, got {market_cap_billions}")
    clamped = market_cap_billions < MCAP_FLOOR_BILLIONS
    return 1.0 / math.log(max(market_cap_billions, MCAP_FLOOR_BILLIONS)), clamped


def impute_influence(column: list[Optional[float]]) -> tuple[list[float], int]:
    """Replace missing entries with the mean of observed values."""
    observed = [v for v in column if v is not None]
    if not observed:
        raise UnusableVariableError("cannot impute a column with no observed values")
    mean = sum(observed) / len(observed)
    filled = [v if v is not None else mean for v in column]
    return filled, len(column) - len(observed)


def _raw_value(graph: SupplyChainGraph, company: Company, name: str) -> Optional[float]:
    if name == RESPONSE_DEFAULT:
        return company.cds_5y_bps
    if name == "dp":
        return company.default_prob
    if name == "market_cap":
        return company.market_cap_billions

    side, _, metric = name.partition("_")
    if metric in ("avg_dp", "wavg_dp"):
        prof = influence_profile(graph, company.id, side)
        return prof.avg_dp if metric == "avg_dp" else prof.wavg_dp
    prof = concentration_profile(graph, company.id, side)
    return {
        "count": prof.n_partners,
        "public_count": prof.n_public_partners,
        "quantified_count": prof.n_quantified,
        "share_sum": prof.share_sum,
        "hhi": prof.hhi,
    }[metric]


def build_design(graph: SupplyChainGraph, spec: ModelSpec, keep_financials: bool = False) -> DesignMatrix:
    """Realize a ModelSpec as (column names, X, y, w) plus drop accounting."""
    spec.validate()
    companies = sorted(graph.companies.values(), key=lambda c: c.id)

    dropped: list[tuple[str, str]] = []
    if not keep_financials:
        companies, removed = exclude_financials(companies)
        dropped.extend((c.id, "financial_sector") for c in removed)

    rows: list[Company] = []
    for c in companies:
        if c.cds_5y_bps is None:
            dropped.append((c.id, "missing_cds"))
        elif c.default_prob is None:
            dropped.append((c.id, "missing_dp"))
        elif c.market_cap_billions is None:
            dropped.append((c.id, "missing_market_cap"))
        else:
            rows.append(c)
    if not rows:
        raise EmptyDesignError("no usable rows after filtering")

    predictors = sorted(spec.predictors, key=lambda p: _ORDER[p])
    raw: dict[str, list[Optional[float]]] = {
        name: [_raw_value(graph, c, name) for c in rows] for name in [spec.response, *predictors]
    }

    # drop_rows policy first, then impute on the survivors
    keep = [True] * len(rows)
    for name in predictors:
        if spec.missing_policy.get(name, MEAN_IMPUTE) == DROP_ROWS:
            for i, v in enumerate(raw[name]):
                if v is None and keep[i]:
                    keep[i] = False
                    dropped.append((rows[i].id, f"missing_{name}"))
    rows = [c for c, k in zip(rows, keep) if k]
    if not rows:
        raise EmptyDesignError("every row dropped by missing-value policy")
    raw = {name: [v for v, k in zip(col, keep) if k] for name, col in raw.items()}

    n_imputed: dict[str, int] = {}
    for name in predictors:
        col = raw[name]
        if any(v is None for v in col):
            if name == spec.response or all(v is None for v in col):
                raise UnusableVariableError(f"variable {name!r} has no observed values")
            raw[name], n_imputed[name] = impute_influence(col)
    if any(v is None for v in raw[spec.response]):
        raise UnusableVariableError(f"response {spec.response!r} has missing values")

    columns: list[str] = ["intercept"]
    data: list[np.ndarray] = [np.ones(len(rows))]
    for name in predictors:
        tr = spec.transforms.get(name, DEFAULT_TRANSFORMS[name])
        data.append(np.array([apply_transform(v, tr) for v in raw[name]]))
        columns.append(name if tr == IDENTITY else f"{name}_{tr}")

    if spec.include_sector_indicators:
        _add_indicators(rows, "gics_sector", SECTOR_REFERENCE, "sector", columns, data)
    if spec.include_country_indicators:
        _add_indicators(rows, "country_of_risk", COUNTRY_REFERENCE, "country", columns, data)

    y_tr = spec.transforms.get(spec.response, DEFAULT_TRANSFORMS[spec.response])
    y = np.array([apply_transform(v, y_tr) for v in raw[spec.response]])

    n_clamped = 0
    if spec.weighting == "reciprocal_log_mcap":
        pairs = [observation_weight(c.market_cap_billions) for c in rows]
        w = np.array([p[0] for p in pairs])
        n_clamped = sum(p[1] for p in pairs)
    else:
        w = np.ones(len(rows))

    return DesignMatrix(
        column_names=tuple(columns),
        X=np.column_stack(data),
        y=y,
        w=w,
        row_ids=tuple(c.id for c in rows),
        dropped=tuple(dropped),
        n_imputed=n_imputed,
        n_clamped_weights=n_clamped,
    )


def _add_indicators(rows, attr, reference, prefix, columns, data):
    levels = sorted({getattr(c, attr) for c in rows} - {reference})
    for level in levels:
        columns.append(f"{prefix}[{level}]")
        data.append(np.array([1.0 if getattr(c, attr) == level else 0.0 for c in rows]))
