"""Command-line surface: validate, metrics, describe, fit, synth.

Exit codes: 0 success, 2 parse/spec error, 3 data-validation error,
4 numerical failure. Errors are prefixed with the pipeline stage.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import __version__
from .errors import GraphBuildError, NumericalError, ParseError, SpecError
from .graph import SupplyChainGraph, validate as validate_records
from .ingest import (
    parse_companies,
    parse_model_specs,
    parse_relationships,
    write_companies,
    write_relationships,
)
from .report import (
    DESCRIPTIVE_VARIABLES,
    RegressionReport,
    descriptive_columns,
    emit_histogram,
    model_report,
    render_descriptives,
    render_histogram,
    render_metrics,
    render_report,
)
from .synth import SynthConfig, generate
from .transform import build_design
from .wls import fit

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4

_WEIGHT_CHOICES = {"reciprocal-log-mcap": "reciprocal_log_mcap", "none": "unweighted"}


def _load_graph(companies_path, relationships_path) -> SupplyChainGraph:
    companies = parse_companies(companies_path)
    relationships = parse_relationships(relationships_path)
    return SupplyChainGraph(companies, relationships)


def run_pipeline(companies_path, relationships_path, spec_path, weights=None, keep_financials=False):
    """Parse -> validate -> build designs -> fit; returns (report, per-model fits)."""
    graph = _load_graph(companies_path, relationships_path)
    specs, baseline = parse_model_specs(spec_path)
    if weights is not None:
        specs = [replace(s, weighting=weights) for s in specs]
    fits = []
    for spec in specs:
        design = build_design(graph, spec, keep_financials=keep_financials)
        result = fit(design.X, design.y, design.w, design.column_names)
        fits.append((spec, design, result))
    report = RegressionReport(
        models=tuple(model_report(s.name, d, r) for s, d, r in fits),
        baseline=baseline,
    )
    return report, fits


def _emit(text: str, output_path=None):
    sys.stdout.write(text)
    if output_path:
        with open(output_path, "w", encoding="utf-8") as f:
            f.write(text)


def _cmd_validate(args) -> int:
    companies = parse_companies(args.companies)
    relationships = parse_relationships(args.relationships)
    violations = validate_records(companies, relationships)
    for v in violations:
        print(v)
    if violations:
        print(f"{len(violations)} violation(s) found", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"ok: {len(companies)} companies, {len(relationships)} relationships")
    return EXIT_OK


def _cmd_metrics(args) -> int:
    graph = _load_graph(args.companies, args.relationships)
    _emit(render_metrics(graph), args.output)
    return EXIT_OK


def _cmd_describe(args) -> int:
    graph = _load_graph(args.companies, args.relationships)
    columns = descriptive_columns(graph, keep_financials=args.keep_financials)
    parts = [render_descriptives(columns)]
    for name in DESCRIPTIVE_VARIABLES:
        observed = [v for v in columns[name] if v is not None]
        if observed:
            parts.append("\n" + render_histogram(name, emit_histogram(observed, args.bins)))
    _emit("".join(parts), args.output)
    if args.figures:
        from .figures import save_distribution_figure

        for name in DESCRIPTIVE_VARIABLES:
            observed = [v for v in columns[name] if v is not None]
            if observed:
                save_distribution_figure(observed, name, args.figures, n_bins=args.bins)
    return EXIT_OK


def _cmd_fit(args) -> int:
    weights = _WEIGHT_CHOICES[args.weights] if args.weights else None
    report, fits = run_pipeline(
        args.companies,
        args.relationships,
        args.spec,
        weights=weights,
        keep_financials=args.keep_financials,
    )
    _emit(render_report(report), args.output)
    if args.figures:
        from .figures import save_fit_figure

        for spec, design, result in fits:
            save_fit_figure(design.y - result.residuals, result.residuals, spec.name, args.figures)
    return EXIT_OK


def _cmd_synth(args) -> int:
    config = SynthConfig(
        n_companies=args.n,
        seed=args.seed,
        fraction_quantified_edges=args.quantified_fraction,
    )
    graph = generate(config)
    companies = list(graph.companies.values())
    write_companies(args.out_companies, companies)
    write_relationships(args.out_relationships, list(graph.relationships))
    print(
        f"wrote {len(companies)} companies to {args.out_companies} and "
        f"{len(graph.relationships)} relationships to {args.out_relationships}"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainspread",
        description="Supply-chain network metrics and weighted-OLS credit spread models",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check input files against all graph invariants")
    p.add_argument("companies")
    p.add_argument("relationships")
    p.set_defaults(func=_cmd_validate, stage="validate")

    p = sub.add_parser("metrics", help="per-company concentration and influence profiles (CSV)")
    p.add_argument("companies")
    p.add_argument("relationships")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_metrics, stage="metrics")

    p = sub.add_parser("describe", help="means/SDs/correlations and distribution tables")
    p.add_argument("companies")
    p.add_argument("relationships")
    p.add_argument("--bins", type=int, default=30)
    p.add_argument("--keep-financials", action="store_true")
    p.add_argument("--figures", default=None, metavar="DIR", help="also render histogram PNGs")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_describe, stage="describe")

    p = sub.add_parser("fit", help="fit the models in a spec file and print the report")
    p.add_argument("companies")
    p.add_argument("relationships")
    p.add_argument("spec")
    p.add_argument("--weights", choices=sorted(_WEIGHT_CHOICES), default=None)
    p.add_argument("--keep-financials", action="store_true")
    p.add_argument("--figures", default=None, metavar="DIR", help="also render residual plots")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_fit, stage="fit")

    p = sub.add_parser("synth", help="generate a calibrated synthetic panel")
    p.add_argument("out_companies")
    p.add_argument("out_relationships")
    p.add_argument("--n", type=int, default=676)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quantified-fraction", type=float, default=0.37)
    p.set_defaults(func=_cmd_synth, stage="synth")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SpecError) as e:
        print(f"{args.stage}: {e}", file=sys.stderr)
        return EXIT_PARSE
    except GraphBuildError as e:
        print(f"{args.stage}: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as e:
        print(f"{args.stage}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
