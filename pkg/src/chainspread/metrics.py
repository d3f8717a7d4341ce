"""Per-company concentration and influence metrics.

All functions are pure over an immutable graph. The five concentration
metrics are computed for either side of a company (its customer list or
its supplier list); the Herfindahl index and share sum only consider the
subset of partners whose relationship is quantified.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, UndefinedMetricError
from .graph import SHARE_SUM_TOL, SupplyChainGraph, partner_share

SIDES = ("customer", "supplier")


@dataclass(frozen=True, slots=True)
class ConcentrationProfile:
    side: str
    n_partners: int
    n_public_partners: int
    n_quantified: int
    share_sum: float
    hhi: Optional[float]


@dataclass(frozen=True, slots=True)
class InfluenceProfile:
    side: str
    avg_dp: Optional[float]
    wavg_dp: Optional[float]
    n_with_dp: int
    n_weightable: int


def hhi(shares: list[float]) -> float:
    """Herfindahl index: sum of squared proportion shares."""
    if not shares:
        raise UndefinedMetricError("hhi undefined for an empty share list")
    total = 0.0
    for s in shares:
        if not (0.0 < s <= 1.0):
            raise DomainError(f"share {s} not in (0,1]")
        total += s
    if total > 1.0 + SHARE_SUM_TOL:
        raise DomainError(f"shares sum to {total} > 1")
    return sum(s * s for s in shares)


def _quantified_shares(graph: SupplyChainGraph, company_id: str, side: str) -> dict[str, float]:
    """Partner id -> share, for partners with a quantified (positive) share."""
    out = {}
    for rel, partner in graph.partners_of(company_id, side):
        s = partner_share(rel, side)
        if s is not None and s > 0.0:
            out[partner.id] = s
    return out


def _tie_share(graph: SupplyChainGraph, q: str, j: str, side: str, mixed_sides: bool) -> float:
    """Normalized proportion of q's quantified ties that go to j.

    Same-side (default): customer analysis looks at q's customer list, supplier
    analysis at q's supplier list. With mixed_sides, any quantified tie between
    q and j counts, normalized over all of q's quantified ties in both roles.
    """
    if not mixed_sides:
        shares = _quantified_shares(graph, q, side)
        total = sum(shares.values())
        if j not in shares or total <= 0.0:
            return 0.0
        return shares[j] / total

    strengths: dict[str, float] = {}
    for other_side in SIDES:
        for pid, s in _quantified_shares(graph, q, other_side).items():
            strengths[pid] = strengths.get(pid, 0.0) + s
    total = sum(strengths.values())
    if j not in strengths or total <= 0.0:
        return 0.0
    return strengths[j] / total


def constraint(graph: SupplyChainGraph, company_id: str, side: str, mixed_sides: bool = False) -> float:
    """Structural-holes constraint: HHI augmented with indirect two-path terms.

    Direct proportions are renormalized over the company's quantified partners
    on the chosen side so they sum to 1. With no partner-partner ties the value
    reduces to the Herfindahl index of those renormalized shares.
    """
    shares = _quantified_shares(graph, company_id, side)
    if not shares:
        raise UndefinedMetricError(f"{company_id} has no quantified {side} partners")
    total = sum(shares.values())
    p = {j: s / total for j, s in shares.items()}

    value = 0.0
    for j, p_ij in p.items():
        indirect = 0.0
        for q, p_iq in p.items():
            if q == j:
                continue
            indirect += p_iq * _tie_share(graph, q, j, side, mixed_sides)
        value += (p_ij + indirect) ** 2
    return value


def concentration_profile(graph: SupplyChainGraph, company_id: str, side: str) -> ConcentrationProfile:
    partners = graph.partners_of(company_id, side)
    shares = []
    n_public = 0
    for rel, partner in partners:
        if partner.has_public_identifier:
            n_public += 1
        s = partner_share(rel, side)
        if s is not None and s > 0.0:
            shares.append(s)
    return ConcentrationProfile(
        side=side,
        n_partners=len(partners),
        n_public_partners=n_public,
        n_quantified=len(shares),
        share_sum=sum(shares),
        hhi=hhi(shares) if shares else None,
    )


def influence_profile(graph: SupplyChainGraph, company_id: str, side: str) -> InfluenceProfile:
    partners = graph.partners_of(company_id, side)
    dps = []
    weighted = []  # (share, dp) over partners having both
    for rel, partner in partners:
        if partner.default_prob is None:
            continue
        dps.append(partner.default_prob)
        s = partner_share(rel, side)
        if s is not None and s > 0.0:
            weighted.append((s, partner.default_prob))

    avg_dp = sum(dps) / len(dps) if dps else None
    wavg_dp = None
    if weighted:
        wsum = sum(s for s, _ in weighted)
        wavg_dp = sum(s * d for s, d in weighted) / wsum
    return InfluenceProfile(
        side=side,
        avg_dp=avg_dp,
        wavg_dp=wavg_dp,
        n_with_dp=len(dps),
        n_weightable=len(weighted),
    )
