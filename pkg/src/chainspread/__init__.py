"""Supply-chain network concentration/influence metrics and weighted-OLS
credit spread models."""

__version__ = "0.1.0"

from .graph import Company, Relationship, SupplyChainGraph, customers_of, suppliers_of, validate
from .metrics import (
    ConcentrationProfile,
    InfluenceProfile,
    concentration_profile,
    constraint,
    hhi,
    influence_profile,
)
from .transform import (
    DesignMatrix,
    ModelSpec,
    build_design,
    exclude_financials,
    impute_influence,
    log1p_count,
    log_transform,
    observation_weight,
)
from .wls import FitResult, adj_r2, delta_r2_bps, fit, r2_weighted, significance_stars
from .tdist import student_t_sf
from .synth import SynthConfig, generate

__all__ = [
    "Company",
    "Relationship",
    "SupplyChainGraph",
    "customers_of",
    "suppliers_of",
    "validate",
    "ConcentrationProfile",
    "InfluenceProfile",
    "concentration_profile",
    "constraint",
    "hhi",
    "influence_profile",
    "DesignMatrix",
    "ModelSpec",
    "build_design",
    "exclude_financials",
    "impute_influence",
    "log1p_count",
    "log_transform",
    "observation_weight",
    "FitResult",
    "adj_r2",
    "delta_r2_bps",
    "fit",
    "r2_weighted",
    "significance_stars",
    "student_t_sf",
    "SynthConfig",
    "generate",
]
