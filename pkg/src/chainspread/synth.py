"""Synthetic company panels calibrated to the target log-space moments.

Each panel company gets a private pool of partner companies so its realized
supplier/customer counts match the drawn counts exactly. Attribute variables
are Gaussian in log space; partner default probabilities share a per-company
level so the cross-company spread of the log-average hits its target.
Quantified shares are drawn from a truncated power-law-like family and
rescaled so per-company share sums stay below 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GenerationError
from .graph import Company, Relationship, SupplyChainGraph

DEFAULT_TARGET_MOMENTS: dict[str, tuple[float, float]] = {
    "cds_log": (4.33, 0.78),
    "supplier_count_log1p": (3.78, 1.27),
    "customer_count_log1p": (3.12, 1.46),
    "supplier_avg_dp_log": (-6.10, 0.78),
    "customer_avg_dp_log": (-6.17, 1.02),
    "dp_log": (-7.50, 1.72),
    "market_cap_log": (3.39, 2.08),
}

GICS_SECTORS = [
    "Consumer Discretionary",
    "Consumer Staples",
    "Energy",
    "Financials",
    "Health Care",
    "Industrials",
    "Information Technology",
    "Materials",
    "Telecommunication Services",
    "Utilities",
]

COUNTRIES = [
    "US", "AT", "BE", "BR", "CA", "DK", "FI", "FR", "DE", "GR", "ID", "IE",
    "IT", "JP", "LU", "MX", "NL", "NO", "PE", "PT", "ES", "SE", "CH", "GB",
]

# panel composition mirrors the 152-of-828 financials share
DEFAULT_FRACTION_FINANCIALS = 152 / 828

_PARTNER_DP_JITTER = 0.05  # within-company spread of partners' log default prob


def _default_sector_weights() -> dict[str, float]:
    non_fin = [s for s in GICS_SECTORS if s != "Financials"]
    w = (1.0 - DEFAULT_FRACTION_FINANCIALS) / len(non_fin)
    weights = {s: w for s in non_fin}
    weights["Financials"] = DEFAULT_FRACTION_FINANCIALS
    return weights


def _default_country_weights() -> dict[str, float]:
    weights = {c: 0.4 / (len(COUNTRIES) - 1) for c in COUNTRIES}
    weights["US"] = 0.6
    return weights


@dataclass(frozen=True)
class SynthConfig:
    n_companies: int = 676
    seed: int = 0
    target_moments: dict[str, tuple[float, float]] = field(
        default_factory=lambda: dict(DEFAULT_TARGET_MOMENTS)
    )
    sector_weights: dict[str, float] = field(default_factory=_default_sector_weights)
    country_weights: dict[str, float] = field(default_factory=_default_country_weights)
    fraction_financials: float = DEFAULT_FRACTION_FINANCIALS
    fraction_quantified_edges: float = 0.37
    fraction_partners_with_dp: float = 0.70
    fraction_public: float = 0.8

    def validate(self):
        if self.n_companies < 2:
            raise GenerationError("n_companies must be >= 2")
        for name, value in (
            ("fraction_financials", self.fraction_financials),
            ("fraction_quantified_edges", self.fraction_quantified_edges),
            ("fraction_partners_with_dp", self.fraction_partners_with_dp),
            ("fraction_public", self.fraction_public),
        ):
            if not (0.0 <= value <= 1.0):
                raise GenerationError(f"{name} must be in [0,1], got {value}")
        missing = set(DEFAULT_TARGET_MOMENTS) - set(self.target_moments)
        if missing:
            raise GenerationError(f"target_moments missing entries: {sorted(missing)}")
        for name, (_, sd) in self.target_moments.items():
            if sd <= 0:
                raise GenerationError(f"target sd for {name} must be positive")


def _draw_count(rng, mean, sd) -> int:
    return max(0, round(np.expm1(rng.normal(mean, sd))))


def _draw_shares(rng, m: int) -> np.ndarray:
    """m skewed shares with sum uniform in (0.2, 0.95)."""
    raw = rng.pareto(2.0, size=m) + 1.0
    total = rng.uniform(0.2, 0.95)
    return raw / raw.sum() * total


def _clamped_prob(x: float) -> float:
    return float(min(max(x, 1e-12), 1.0 - 1e-9))


def generate(config: SynthConfig) -> SupplyChainGraph:
    """Deterministic panel + private-partner graph for the given seed."""
    config.validate()
    rng = np.random.default_rng(config.seed)
    tm = config.target_moments

    sectors = sorted(config.sector_weights)
    sector_p = np.array([config.sector_weights[s] for s in sectors], dtype=float)
    sector_p /= sector_p.sum()
    non_fin = [s for s in sectors if s != "Financials"]
    non_fin_p = np.array([config.sector_weights[s] for s in non_fin], dtype=float)
    if non_fin_p.sum() <= 0:
        raise GenerationError("sector_weights must give nonzero mass outside Financials")
    non_fin_p /= non_fin_p.sum()
    countries = sorted(config.country_weights)
    country_p = np.array([config.country_weights[c] for c in countries], dtype=float)
    country_p /= country_p.sum()

    companies: list[Company] = []
    relationships: list[Relationship] = []
    partner_serial = 0

    def new_partners(count: int, level: float) -> list[Company]:
        nonlocal partner_serial
        # batched draws: per-partner rng.choice calls dominate runtime otherwise
        has_dp = rng.uniform(size=count) < config.fraction_partners_with_dp
        dps = np.exp(level + rng.normal(0.0, _PARTNER_DP_JITTER, size=count))
        public = rng.uniform(size=count) < config.fraction_public
        sector_idx = rng.choice(len(sectors), size=count, p=sector_p)
        country_idx = rng.choice(len(countries), size=count, p=country_p)
        out = []
        for k in range(count):
            partner_serial += 1
            out.append(
                Company(
                    id=f"P{partner_serial:06d}",
                    name=f"Partner {partner_serial}",
                    has_public_identifier=bool(public[k]),
                    default_prob=_clamped_prob(dps[k]) if has_dp[k] else None,
                    gics_sector=sectors[sector_idx[k]],
                    country_of_risk=countries[country_idx[k]],
                )
            )
        companies.extend(out)
        return out

    for i in range(1, config.n_companies + 1):
        cid = f"C{i:05d}"
        # keep the financials fraction deterministic in expectation via draw order
        is_financial = rng.uniform() < config.fraction_financials
        sector = "Financials" if is_financial else str(rng.choice(non_fin, p=non_fin_p))
        companies.append(
            Company(
                id=cid,
                name=f"Company {i}",
                has_public_identifier=True,
                cds_5y_bps=float(np.exp(rng.normal(*tm["cds_log"]))),
                default_prob=_clamped_prob(np.exp(rng.normal(*tm["dp_log"]))),
                market_cap_billions=float(np.exp(rng.normal(*tm["market_cap_log"]))),
                gics_sector=sector,
                country_of_risk=str(rng.choice(countries, p=country_p)),
            )
        )

        supplier_level = rng.normal(*tm["supplier_avg_dp_log"])
        customer_level = rng.normal(*tm["customer_avg_dp_log"])
        n_suppliers = _draw_count(rng, *tm["supplier_count_log1p"])
        n_customers = _draw_count(rng, *tm["customer_count_log1p"])

        for side, count, level in (
            ("supplier", n_suppliers, supplier_level),
            ("customer", n_customers, customer_level),
        ):
            partners = new_partners(count, level)
            q_mask = rng.uniform(size=count) < config.fraction_quantified_edges
            quantified = [p for p, q in zip(partners, q_mask) if q]
            shares = dict(zip((p.id for p in quantified), _draw_shares(rng, len(quantified))))
            for p in partners:
                share = shares.get(p.id)
                if side == "supplier":
                    relationships.append(
                        Relationship(supplier_id=p.id, customer_id=cid, cost_share=share)
                    )
                else:
                    relationships.append(
                        Relationship(supplier_id=cid, customer_id=p.id, revenue_share=share)
                    )

    return SupplyChainGraph(companies, relationships)
