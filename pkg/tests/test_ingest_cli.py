import os

import pytest

from chainspread.cli import main, run_pipeline
from chainspread.errors import ParseError, SpecError
from chainspread.ingest import (
    parse_companies,
    parse_model_specs,
    parse_relationships,
    write_companies,
    write_relationships,
)
from chainspread.graph import Company, Relationship

COMPANY_HEADER = "id,name,has_public_identifier,cds_5y_bps,default_prob,market_cap_billions,gics_sector,country_of_risk"
REL_HEADER = "supplier_id,customer_id,revenue_share_pct,cost_share_pct"


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def fixture_files(tmp_path):
    companies = write(
        tmp_path / "companies.csv",
        COMPANY_HEADER + "\n"
        "TRIP,TripAdvisor Inc,true,75.9,0.001,12.5,Consumer Discretionary,US\n"
        "EXPE,Expedia Inc,true,60.0,0.002,20.0,Consumer Discretionary,US\n"
        "AAL,American Airlines Group Inc,true,300.0,0.02,30.0,Industrials,US\n",
    )
    relationships = write(
        tmp_path / "relationships.csv",
        REL_HEADER + "\nTRIP,EXPE,25.63,\nTRIP,AAL,1.42,40\nEXPE,AAL,,60\n",
    )
    return companies, relationships


def test_parse_companies(fixture_files):
    companies, _ = fixture_files
    parsed = parse_companies(companies)
    assert len(parsed) == 3
    trip = parsed[0]
    assert trip.id == "TRIP" and trip.has_public_identifier
    assert trip.cds_5y_bps == 75.9
    assert trip.gics_sector == "Consumer Discretionary"


def test_parse_relationships_share_conversion(fixture_files):
    _, relationships = fixture_files
    rels = parse_relationships(relationships)
    assert rels[0].revenue_share == pytest.approx(0.2563)
    assert rels[0].cost_share is None
    assert rels[1].cost_share == pytest.approx(0.40)


def test_parse_empty_file_with_header(tmp_path):
    assert parse_companies(write(tmp_path / "c.csv", COMPANY_HEADER + "\n")) == []
    assert parse_relationships(write(tmp_path / "r.csv", REL_HEADER + "\n")) == []


def test_parse_bad_header(tmp_path):
    with pytest.raises(ParseError):
        parse_companies(write(tmp_path / "c.csv", "id,name\nA,a\n"))
    with pytest.raises(ParseError):
        parse_relationships(write(tmp_path / "r.csv", "a,b\n"))


def test_parse_share_out_of_range(tmp_path):
    path = write(tmp_path / "r.csv", REL_HEADER + "\nA,B,120,\n")
    with pytest.raises(ParseError) as exc:
        parse_relationships(path)
    assert exc.value.row == 2


def test_parse_non_numeric(tmp_path):
    path = write(tmp_path / "c.csv", COMPANY_HEADER + "\nA,a,true,abc,,,Energy,US\n")
    with pytest.raises(ParseError) as exc:
        parse_companies(path)
    assert exc.value.row == 2


def test_write_parse_round_trip(tmp_path):
    companies = [
        Company(id="A", name="Alpha", has_public_identifier=True, cds_5y_bps=75.9,
                default_prob=0.01, market_cap_billions=3.5, gics_sector="Energy",
                country_of_risk="US"),
        Company(id="B", name="Beta", gics_sector="Materials", country_of_risk="JP"),
    ]
    rels = [Relationship("A", "B", revenue_share=0.2563), Relationship("B", "A", cost_share=0.4)]
    cpath, rpath = tmp_path / "c.csv", tmp_path / "r.csv"
    write_companies(cpath, companies)
    write_relationships(rpath, rels)
    assert parse_companies(cpath) == companies
    back = parse_relationships(rpath)
    assert back[0].revenue_share == pytest.approx(0.2563, rel=1e-9)
    assert back[1].cost_share == pytest.approx(0.4, rel=1e-9)


# --- model spec files ---

SPEC_TEXT = """
# three nested models
baseline = M1

[model M1]
predictors = dp, market_cap

[model M2]
predictors = supplier_count, customer_count, dp, market_cap

[model M3]
predictors = supplier_count, customer_count, supplier_avg_dp, customer_avg_dp, dp, market_cap
missing.supplier_avg_dp = mean_impute
missing.customer_avg_dp = mean_impute
"""


def test_parse_model_specs(tmp_path):
    specs, baseline = parse_model_specs(write(tmp_path / "m.cfg", SPEC_TEXT))
    assert baseline == "M1"
    assert [s.name for s in specs] == ["M1", "M2", "M3"]
    assert specs[2].missing_policy["supplier_avg_dp"] == "mean_impute"
    assert specs[0].weighting == "reciprocal_log_mcap"


def test_parse_model_specs_errors(tmp_path):
    with pytest.raises(SpecError):
        parse_model_specs(write(tmp_path / "a.cfg", "[model M1]\npredictors = nope\n"))
    with pytest.raises(SpecError):
        parse_model_specs(write(tmp_path / "b.cfg", "junk line\n"))
    with pytest.raises(SpecError):
        parse_model_specs(write(tmp_path / "c.cfg", "baseline = MX\n[model M1]\npredictors = dp\n"))
    with pytest.raises(SpecError):
        parse_model_specs(write(tmp_path / "d.cfg", ""))


# --- CLI ---

def test_cli_validate_ok(fixture_files, capsys):
    companies, relationships = fixture_files
    assert main(["validate", companies, relationships]) == 0
    assert "ok:" in capsys.readouterr().out


def test_cli_validate_violations(tmp_path, capsys):
    companies = write(tmp_path / "c.csv", COMPANY_HEADER + "\nA,a,true,,,,Energy,US\n")
    rels = write(tmp_path / "r.csv", REL_HEADER + "\nA,B,10,\n")
    assert main(["validate", companies, rels]) == 3
    assert "unknown-endpoint" in capsys.readouterr().out


def test_cli_parse_error_exit_code(tmp_path, capsys):
    bad = write(tmp_path / "c.csv", "wrong\n")
    rels = write(tmp_path / "r.csv", REL_HEADER + "\n")
    assert main(["validate", bad, rels]) == 2
    assert "validate:" in capsys.readouterr().err


def test_cli_metrics(fixture_files, capsys):
    companies, relationships = fixture_files
    assert main(["metrics", companies, relationships]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("company_id,side,")
    assert any(line.startswith("TRIP,customer,2,") for line in out.splitlines())


def test_cli_describe(fixture_files, tmp_path, capsys):
    companies, relationships = fixture_files
    out_file = tmp_path / "desc.csv"
    assert main(["describe", companies, relationships, "--bins", "4", "-o", str(out_file)]) == 0
    text = out_file.read_text()
    assert text.startswith("variable,n,mean,sd")
    assert "lower,upper,count" in text


def test_cli_fit_smoke(fixture_files, tmp_path, capsys):
    companies, relationships = fixture_files
    spec = write(
        tmp_path / "m.cfg",
        "[model M1]\npredictors = dp\nsector_indicators = false\ncountry_indicators = false\n",
    )
    assert main(["fit", companies, relationships, spec]) == 0
    out = capsys.readouterr().out
    assert "r2," in out
    assert out.splitlines()[0].startswith("variable,M1_estimate")


def test_cli_fit_unknown_variable(fixture_files, tmp_path, capsys):
    companies, relationships = fixture_files
    spec = write(tmp_path / "m.cfg", "[model M1]\npredictors = bogus\n")
    assert main(["fit", companies, relationships, spec]) == 2


def test_cli_synth_and_full_pipeline(tmp_path, capsys):
    c = str(tmp_path / "comp.csv")
    r = str(tmp_path / "rel.csv")
    assert main(["synth", c, r, "--n", "120", "--seed", "3"]) == 0
    spec = write(tmp_path / "m.cfg", SPEC_TEXT)
    report, fits = run_pipeline(c, r, spec)
    assert len(report.models) == 3
    assert report.baseline == "M1"
    assert all(m.n > 0 for m in report.models)


def test_cli_figures(tmp_path, fixture_files):
    companies, relationships = fixture_files
    figdir = tmp_path / "figs"
    spec = write(
        tmp_path / "m.cfg",
        "[model M1]\npredictors = dp\nsector_indicators = false\ncountry_indicators = false\n",
    )
    assert main(["fit", companies, relationships, spec, "--figures", str(figdir)]) == 0
    assert (figdir / "fit_M1.png").exists()
    assert main(["describe", companies, relationships, "--figures", str(figdir)]) == 0
    assert (figdir / "cds_log.png").exists()


def test_pipeline_determinism(fixture_files, tmp_path):
    companies, relationships = fixture_files
    spec = write(
        tmp_path / "m.cfg",
        "[model M1]\npredictors = dp\nsector_indicators = false\ncountry_indicators = false\n",
    )
    from chainspread.report import render_report

    a = render_report(run_pipeline(companies, relationships, spec)[0])
    b = render_report(run_pipeline(companies, relationships, spec)[0])
    assert a == b
