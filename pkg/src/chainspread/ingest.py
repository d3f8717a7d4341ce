"""File ingestion: company/relationship CSVs and the model-spec config.

Shares arrive as percentages in (0, 100] and are stored as fractions.
Missing numeric fields are empty strings; any structural error rejects the
whole file with a row number.
"""

from __future__ import annotations

import csv

from .errors import ParseError, SpecError
from .graph import Company, Relationship
from .transform import ModelSpec

COMPANY_HEADER = [
    "id",
    "name",
    "has_public_identifier",
    "cds_5y_bps",
    "default_prob",
    "market_cap_billions",
    "gics_sector",
    "country_of_risk",
]
RELATIONSHIP_HEADER = ["supplier_id", "customer_id", "revenue_share_pct", "cost_share_pct"]


def _opt_float(value: str, field: str, row: int, path):
    if value == "":
        return None
    try:
        return float(value)
    except ValueError:
        raise ParseError(f"non-numeric {field}: {value!r}", row=row, path=path) from None


def _bool(value: str, field: str, row: int, path) -> bool:
    v = value.strip().lower()
    if v in ("true", "1", "yes"):
        return True
    if v in ("false", "0", "no", ""):
        return False
    raise ParseError(f"bad boolean {field}: {value!r}", row=row, path=path)


def _check_header(header, expected, path):
    if header != expected:
        raise ParseError(f"bad header; expected {','.join(expected)}", row=1, path=path)


def parse_companies(path) -> list[Company]:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", row=1, path=path) from None
        _check_header(header, COMPANY_HEADER, path)
        out = []
        for i, row in enumerate(reader, start=2):
            if len(row) != len(COMPANY_HEADER):
                raise ParseError(f"expected {len(COMPANY_HEADER)} fields, got {len(row)}", row=i, path=path)
            out.append(
                Company(
                    id=row[0],
                    name=row[1],
                    has_public_identifier=_bool(row[2], "has_public_identifier", i, path),
                    cds_5y_bps=_opt_float(row[3], "cds_5y_bps", i, path),
                    default_prob=_opt_float(row[4], "default_prob", i, path),
                    market_cap_billions=_opt_float(row[5], "market_cap_billions", i, path),
                    gics_sector=row[6],
                    country_of_risk=row[7],
                )
            )
    return out


def _share_pct(value: str, field: str, row: int, path):
    pct = _opt_float(value, field, row, path)
    if pct is None:
        return None
    if not (0.0 < pct <= 100.0):
        raise ParseError(f"{field} {pct} outside (0,100]", row=row, path=path)
    return pct / 100.0


def parse_relationships(path) -> list[Relationship]:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", row=1, path=path) from None
        _check_header(header, RELATIONSHIP_HEADER, path)
        out = []
        for i, row in enumerate(reader, start=2):
            if len(row) != len(RELATIONSHIP_HEADER):
                raise ParseError(f"expected {len(RELATIONSHIP_HEADER)} fields, got {len(row)}", row=i, path=path)
            out.append(
                Relationship(
                    supplier_id=row[0],
                    customer_id=row[1],
                    revenue_share=_share_pct(row[2], "revenue_share_pct", i, path),
                    cost_share=_share_pct(row[3], "cost_share_pct", i, path),
                )
            )
    return out


def _fmt(value) -> str:
    return "" if value is None else f"{value:.10g}"


def write_companies(path, companies: list[Company]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(COMPANY_HEADER)
        for c in companies:
            writer.writerow(
                [
                    c.id,
                    c.name,
                    "true" if c.has_public_identifier else "false",
                    _fmt(c.cds_5y_bps),
                    _fmt(c.default_prob),
                    _fmt(c.market_cap_billions),
                    c.gics_sector,
                    c.country_of_risk,
                ]
            )


def write_relationships(path, relationships: list[Relationship]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(RELATIONSHIP_HEADER)
        for r in relationships:
            writer.writerow(
                [
                    r.supplier_id,
                    r.customer_id,
                    _fmt(None if r.revenue_share is None else r.revenue_share * 100.0),
                    _fmt(None if r.cost_share is None else r.cost_share * 100.0),
                ]
            )


_BOOL_KEYS = {"sector_indicators", "country_indicators"}


def parse_model_specs(path) -> tuple[list[ModelSpec], str]:
    """Line-oriented key=value format with [model NAME] section headers.

    Global `baseline = NAME` names the delta-R^2 reference model. Within a
    section: response, predictors (comma separated), sector_indicators,
    country_indicators, weighting, transform.VAR, missing.VAR.
    """
    baseline = None
    sections: list[tuple[str, dict]] = []
    current: dict | None = None

    with open(path, encoding="utf-8") as f:
        for lineno, rawline in enumerate(f, start=1):
            line = rawline.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                parts = line[1:-1].split()
                if len(parts) != 2 or parts[0] != "model" or not parts[1]:
                    raise SpecError(f"{path}: line {lineno}: bad section header {line!r}")
                current = {"name": parts[1], "transforms": {}, "missing": {}}
                sections.append((parts[1], current))
                continue
            if "=" not in line:
                raise SpecError(f"{path}: line {lineno}: expected key = value, got {line!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if current is None:
                if key == "baseline":
                    baseline = value
                else:
                    raise SpecError(f"{path}: line {lineno}: unknown global key {key!r}")
                continue
            if key == "response":
                current["response"] = value
            elif key == "predictors":
                current["predictors"] = tuple(p.strip() for p in value.split(",") if p.strip())
            elif key == "weighting":
                current["weighting"] = value.replace("-", "_")
            elif key in _BOOL_KEYS:
                if value.lower() not in ("true", "false"):
                    raise SpecError(f"{path}: line {lineno}: {key} must be true or false")
                current[key] = value.lower() == "true"
            elif key.startswith("transform."):
                current["transforms"][key[len("transform."):]] = value
            elif key.startswith("missing."):
                current["missing"][key[len("missing."):]] = value
            else:
                raise SpecError(f"{path}: line {lineno}: unknown key {key!r}")

    if not sections:
        raise SpecError(f"{path}: no [model NAME] sections found")
    names = [name for name, _ in sections]
    if len(set(names)) != len(names):
        raise SpecError(f"{path}: duplicate model names")

    specs = []
    for name, sec in sections:
        spec = ModelSpec(
            name=name,
            response=sec.get("response", "cds"),
            predictors=sec.get("predictors", ()),
            transforms=sec["transforms"],
            missing_policy=sec["missing"],
            include_sector_indicators=sec.get("sector_indicators", True),
            include_country_indicators=sec.get("country_indicators", True),
            weighting=sec.get("weighting", "reciprocal_log_mcap"),
        )
        spec.validate()
        specs.append(spec)

    if baseline is None:
        baseline = specs[0].name
    elif baseline not in names:
        raise SpecError(f"{path}: baseline {baseline!r} names no model")
    return specs, baseline
