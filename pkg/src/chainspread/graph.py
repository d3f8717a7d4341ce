"""In-memory model of the inter-organizational supplier/customer network.

The graph is immutable after construction and safe for concurrent reads.
Relationship shares are stored as fractions in (0, 1], never percentages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import CompanyNotFoundError, GraphBuildError

SHARE_SUM_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class Company:
    id: str
    name: str = ""
    has_public_identifier: bool = False
    cds_5y_bps: Optional[float] = None
    default_prob: Optional[float] = None
    market_cap_billions: Optional[float] = None
    gics_sector: str = ""
    country_of_risk: str = ""


@dataclass(frozen=True, slots=True)
class Relationship:
    """Directed edge supplier -> customer.

    revenue_share: fraction of the *supplier's* revenue from this customer.
    cost_share: fraction of the *customer's* total cost from this supplier.
    Either, both, or neither may be present; unquantified edges are first-class.
    """

    supplier_id: str
    customer_id: str
    revenue_share: Optional[float] = None
    cost_share: Optional[float] = None


@dataclass(frozen=True, slots=True)
class Violation:
    code: str
    subject: str
    message: str

    def __str__(self):
        return f"[{self.code}] {self.subject}: {self.message}"


def validate(companies: Iterable[Company], relationships: Iterable[Relationship]) -> list[Violation]:
    """Check every structural invariant; violations are data, not failures."""
    violations: list[Violation] = []
    by_id: dict[str, Company] = {}

    for c in companies:
        if c.id in by_id:
            violations.append(Violation("duplicate-company", c.id, "company id appears more than once"))
            continue
        by_id[c.id] = c
        if c.default_prob is not None and not (0.0 < c.default_prob < 1.0):
            violations.append(
                Violation("dp-range", c.id, f"default_prob {c.default_prob} not strictly in (0,1)")
            )
        if c.cds_5y_bps is not None and not c.cds_5y_bps > 0.0:
            violations.append(
                Violation("cds-positive", c.id, f"cds_5y_bps {c.cds_5y_bps} not strictly positive")
            )
        if c.market_cap_billions is not None and not c.market_cap_billions > 0.0:
            violations.append(
                Violation("mcap-positive", c.id, f"market_cap_billions {c.market_cap_billions} not positive")
            )

    seen_pairs: set[tuple[str, str]] = set()
    revenue_sums: dict[str, float] = {}
    cost_sums: dict[str, float] = {}
    for r in relationships:
        edge = f"{r.supplier_id}->{r.customer_id}"
        if r.supplier_id == r.customer_id:
            violations.append(Violation("self-supply", edge, "supplier and customer are the same company"))
        for cid in (r.supplier_id, r.customer_id):
            if cid not in by_id:
                violations.append(Violation("unknown-endpoint", edge, f"company {cid!r} not in graph"))
        pair = (r.supplier_id, r.customer_id)
        if pair in seen_pairs:
            violations.append(Violation("duplicate-edge", edge, "ordered (supplier, customer) pair repeated"))
        seen_pairs.add(pair)
        for label, share in (("revenue_share", r.revenue_share), ("cost_share", r.cost_share)):
            if share is not None and not (0.0 < share <= 1.0):
                violations.append(Violation("share-range", edge, f"{label} {share} not in (0,1]"))
        if r.revenue_share is not None:
            revenue_sums[r.supplier_id] = revenue_sums.get(r.supplier_id, 0.0) + r.revenue_share
        if r.cost_share is not None:
            cost_sums[r.customer_id] = cost_sums.get(r.customer_id, 0.0) + r.cost_share

    for cid, total in revenue_sums.items():
        if total > 1.0 + SHARE_SUM_TOL:
            violations.append(
                Violation("share-sum", cid, f"customers' revenue shares sum to {total:.6f} > 1")
            )
    for cid, total in cost_sums.items():
        if total > 1.0 + SHARE_SUM_TOL:
            violations.append(
                Violation("share-sum", cid, f"suppliers' cost shares sum to {total:.6f} > 1")
            )
    return violations


class SupplyChainGraph:
    """Immutable supplier/customer network with per-company directional indices."""

    def __init__(self, companies: Iterable[Company], relationships: Iterable[Relationship]):
        companies = list(companies)
        relationships = list(relationships)
        violations = validate(companies, relationships)
        if violations:
            raise GraphBuildError(violations)

        self._companies: dict[str, Company] = {c.id: c for c in companies}
        self._relationships: tuple[Relationship, ...] = tuple(relationships)
        out: dict[str, list[Relationship]] = {c.id: [] for c in companies}
        inc: dict[str, list[Relationship]] = {c.id: [] for c in companies}
        for r in relationships:
            out[r.supplier_id].append(r)
            inc[r.customer_id].append(r)
        # deterministic order regardless of input edge order
        self._customers = {cid: tuple(sorted(rs, key=lambda r: r.customer_id)) for cid, rs in out.items()}
        self._suppliers = {cid: tuple(sorted(rs, key=lambda r: r.supplier_id)) for cid, rs in inc.items()}

    @property
    def companies(self) -> dict[str, Company]:
        return self._companies

    @property
    def relationships(self) -> tuple[Relationship, ...]:
        return self._relationships

    def company(self, company_id: str) -> Company:
        try:
            return self._companies[company_id]
        except KeyError:
            raise CompanyNotFoundError(company_id) from None

    def customers_of(self, company_id: str) -> list[tuple[Relationship, Company]]:
        """Outgoing edges: companies this one supplies, ordered by counterparty id."""
        self.company(company_id)
        return [(r, self._companies[r.customer_id]) for r in self._customers[company_id]]

    def suppliers_of(self, company_id: str) -> list[tuple[Relationship, Company]]:
        """Incoming edges: companies supplying this one, ordered by counterparty id."""
        self.company(company_id)
        return [(r, self._companies[r.supplier_id]) for r in self._suppliers[company_id]]

    def partners_of(self, company_id: str, side: str) -> list[tuple[Relationship, Company]]:
        if side == "customer":
            return self.customers_of(company_id)
        if side == "supplier":
            return self.suppliers_of(company_id)
        raise ValueError(f"side must be 'customer' or 'supplier', got {side!r}")

    def validate(self) -> list[Violation]:
        return validate(self._companies.values(), self._relationships)

    def __len__(self):
        return len(self._companies)


def customers_of(graph: SupplyChainGraph, company_id: str):
    return graph.customers_of(company_id)


def suppliers_of(graph: SupplyChainGraph, company_id: str):
    return graph.suppliers_of(company_id)


def partner_share(rel: Relationship, side: str) -> Optional[float]:
    """The share that quantifies this edge for the given analysis side.

    Customer-side analysis uses the supplier's revenue fraction; supplier-side
    analysis uses the customer's cost fraction.
    """
    return rel.revenue_share if side == "customer" else rel.cost_share
