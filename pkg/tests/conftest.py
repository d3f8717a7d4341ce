import pytest

from chainspread.graph import Company, Relationship, SupplyChainGraph

TRIP_CUSTOMER_SHARES = {
    "EXPE": 0.2563,
    "PCLN": 0.1983,
    "OWW": 0.0544,
    "CTRP": 0.0479,
    "GOOG": 0.0153,
    "AAL": 0.0142,
}


@pytest.fixture
def trip_graph():
    """TripAdvisor with its six quantified public customers."""
    companies = [Company(id="TRIP", name="TripAdvisor Inc", has_public_identifier=True)]
    companies += [Company(id=cid, name=cid, has_public_identifier=True) for cid in TRIP_CUSTOMER_SHARES]
    rels = [
        Relationship(supplier_id="TRIP", customer_id=cid, revenue_share=s)
        for cid, s in TRIP_CUSTOMER_SHARES.items()
    ]
    return SupplyChainGraph(companies, rels)


@pytest.fixture
def triad_graph():
    """TripAdvisor / Expedia / American Airlines triad.

    American Airlines buys 0.6 of its costs from Expedia and 0.4 from
    TripAdvisor; TripAdvisor sends 0.2563 of its revenue to Expedia.
    """
    companies = [
        Company(id="TRIP", name="TripAdvisor", has_public_identifier=True),
        Company(id="EXPE", name="Expedia", has_public_identifier=True),
        Company(id="AAL", name="American Airlines", has_public_identifier=True),
    ]
    rels = [
        Relationship(supplier_id="EXPE", customer_id="AAL", cost_share=0.6),
        Relationship(supplier_id="TRIP", customer_id="AAL", cost_share=0.4),
        Relationship(supplier_id="TRIP", customer_id="EXPE", revenue_share=0.2563),
    ]
    return SupplyChainGraph(companies, rels)
