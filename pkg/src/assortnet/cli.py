"""Command-line front end.

Subcommands: ``synth`` (generate microdata), ``build-graph`` (microdata to
edge list + attribute matrix), ``assort`` (both measures on one network),
``series`` (sliding birth-cohort series). Input/config/parameter problems
exit with code 2; analysis-level nulls (degenerate measures, too few
occupations in assort/series) are reported with status words and exit 0.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

import numpy as np
import pandas as pd

from . import cohorts, synth
from .builder import CategorySchema, build_ons
from .config import AnalysisConfig, load_config
from .errors import (
    AllZeroWeights,
    AssortnetError,
    ConfigError,
    DegenerateAttribute,
    TooFewOccupations,
    ZeroWorkforceGroup,
)
from .graph import EdgeWeightMatrix, normalize_adjacency, write_edge_list
from .ingest import read_microdata, write_report
from .measures import (
    AttributeMatrix,
    averaged_scalar_assortativity,
    dcor_oracle,
    vector_assortativity,
)

DEFAULT_WINDOWS = "1940:1980:10:1"


def _fmt(value: float | None) -> str:
    return "NA" if value is None else f"{value:.17g}"


def _resolve_category(config: AnalysisConfig, name: str | None) -> CategorySchema:
    if name is None:
        return next(iter(config.categories.values()))
    return config.schema(name)


def _load_inputs(args) -> tuple[pd.DataFrame, AnalysisConfig, object]:
    config = load_config(args.config)
    overrides = {}
    if args.min_cell is not None:
        if args.min_cell < 1:
            raise ConfigError("--min-cell must be >= 1")
        overrides["min_cell"] = args.min_cell
    if args.unweighted:
        overrides["weighted"] = False
    if overrides:
        config = dataclasses.replace(config, **overrides)
    frame, report = read_microdata(args.input, config)
    return frame, config, report


def _parse_windows(spec: str) -> list[cohorts.CohortWindow]:
    parts = spec.split(":")
    if len(parts) != 4:
        raise ConfigError(f"--windows must be first:last:width:step, got {spec!r}")
    try:
        first, last, width, step = (int(p) for p in parts)
    except ValueError:
        raise ConfigError(f"--windows fields must be integers, got {spec!r}") from None
    return cohorts.cohort_windows(first, last, width, step)


def cmd_build_graph(args) -> int:
    frame, config, report = _load_inputs(args)
    schema = _resolve_category(config, args.category)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ons = build_ons(frame, schema, min_cell=config.min_cell, weighted=config.weighted)

    write_edge_list(out_dir / "edges.csv", ons.edge_weights, ons.adjacency, ons.labels)
    with open(out_dir / "attributes.csv", "w", encoding="utf-8", newline="") as fh:
        header = ",".join(["occupation_code"] + [f"group_{i+1}" for i in range(schema.d)])
        fh.write(header + "\n")
        for label, row in zip(ons.labels, ons.attributes.matrix):
            fh.write(label + "," + ",".join(f"{v:.17g}" for v in row) + "\n")
    write_report(report, out_dir / "exclusions.txt")

    dropped = ", ".join(f"{c}({n})" for c, n in ons.dropped_occupations) or "none"
    print(f"occupations={len(ons.labels)} persons={ons.n_persons} dropped={dropped}")
    return 0


def _load_prebuilt(edges_path, attrs_path) -> tuple:
    # round_trip parsing: these are our own full-precision files, and the
    # default pandas float parser is not correctly rounded
    attrs = pd.read_csv(
        attrs_path, dtype={"occupation_code": str}, float_precision="round_trip"
    )
    labels = [str(c) for c in attrs["occupation_code"]]
    index = {c: i for i, c in enumerate(labels)}
    x = attrs.drop(columns=["occupation_code"]).to_numpy(dtype=np.float64)
    edges = pd.read_csv(
        edges_path, dtype={"src": str, "dst": str}, float_precision="round_trip"
    )
    w = np.zeros((len(labels), len(labels)))
    for row in edges.itertuples(index=False):
        try:
            i, j = index[row.src], index[row.dst]
        except KeyError as exc:
            raise ConfigError(f"edge endpoint {exc} not in the attribute table") from None
        w[i, j] = w[j, i] = float(row.weight)
    adjacency = normalize_adjacency(EdgeWeightMatrix(w))
    return adjacency, AttributeMatrix(x), labels


def cmd_assort(args) -> int:
    prebuilt = args.edges is not None or args.attributes is not None
    if prebuilt and (args.edges is None or args.attributes is None):
        raise ConfigError("--edges and --attributes must be given together")
    if prebuilt == (args.input is not None):
        raise ConfigError("give either --input (with --config) or --edges/--attributes")

    category = "network"
    n_persons: int | None = None
    total_weight: float | None = None
    if prebuilt:
        adjacency, attributes, labels = _load_prebuilt(args.edges, args.attributes)
        n_occupations = len(labels)
    else:
        if args.config is None:
            raise ConfigError("--config is required with --input")
        frame, config, _ = _load_inputs(args)
        schema = _resolve_category(config, args.category)
        category = schema.name
        try:
            ons = build_ons(frame, schema, min_cell=config.min_cell, weighted=config.weighted)
        except (TooFewOccupations, AllZeroWeights, ZeroWorkforceGroup) as exc:
            status = (
                cohorts.STATUS_TOO_FEW
                if isinstance(exc, (TooFewOccupations, AllZeroWeights))
                else cohorts.STATUS_DEGENERATE
            )
            print(f"vector_r=NA avg_scalar_r=NA status={status}")
            _write_assort_csv(args.out_dir, category, None, None, 0, None, None, status)
            return 0
        adjacency, attributes = ons.adjacency, ons.attributes
        n_occupations = len(ons.labels)
        n_persons, total_weight = ons.n_persons, ons.total_weight

    status = cohorts.STATUS_OK
    try:
        vector_r = vector_assortativity(adjacency, attributes)
    except DegenerateAttribute:
        vector_r, status = None, cohorts.STATUS_DEGENERATE
    try:
        avg_scalar_r = averaged_scalar_assortativity(adjacency, attributes)
    except DegenerateAttribute:
        avg_scalar_r, status = None, cohorts.STATUS_DEGENERATE

    line = f"vector_r={_fmt(vector_r)} avg_scalar_r={_fmt(avg_scalar_r)} status={status}"
    if args.oracle and vector_r is not None:
        oracle_r = dcor_oracle(adjacency, attributes)
        line += f" oracle_r={_fmt(oracle_r)} oracle_abs_diff={abs(vector_r - oracle_r):.17g}"
    print(line)
    _write_assort_csv(
        args.out_dir, category, vector_r, avg_scalar_r, n_occupations,
        n_persons, total_weight, status,
    )
    return 0


def _write_assort_csv(out_dir, category, vector_r, avg_scalar_r, n_occupations,
                      n_persons, total_weight, status) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    opt = lambda v: "" if v is None else (f"{v:.17g}" if isinstance(v, float) else str(v))
    with open(out_dir / "assort.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write(
            "category,vector_assortativity,avg_scalar_assortativity,"
            "n_occupations,n_persons,total_weight,status\n"
        )
        fh.write(
            f"{category},{opt(vector_r)},{opt(avg_scalar_r)},{n_occupations},"
            f"{opt(n_persons)},{opt(total_weight)},{status}\n"
        )


def cmd_series(args) -> int:
    frame, config, report = _load_inputs(args)
    windows = _parse_windows(args.windows)
    if args.category:
        schemas = [config.schema(name) for name in args.category]
    else:
        schemas = list(config.categories.values())
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    dump_dir = out_dir / "edges" if args.dump_edges else None
    table = cohorts.run_series(frame, windows, schemas, config, dump_dir=dump_dir)
    cohorts.write_series_csv(table, out_dir / "series.csv")
    cohorts.write_category_dat(table, out_dir)
    write_report(report, out_dir / "exclusions.txt")
    print(f"windows={len(windows)} categories={len(schemas)} rows={len(table)}")
    return 0


def _parse_extra_category(spec: str) -> CategorySchema:
    name, _, groups = spec.partition("=")
    if not groups:
        raise ConfigError(f"--extra-category must be name=group1,group2,... got {spec!r}")
    return CategorySchema(name.strip(), tuple(g.strip() for g in groups.split(",")))


def cmd_synth(args) -> int:
    lo, _, hi = args.birth_years.partition(":")
    try:
        birth_range = (int(lo), int(hi))
    except ValueError:
        raise ConfigError(f"--birth-years must be min:max, got {args.birth_years!r}") from None
    try:
        params = synth.SynthParams(
            n_persons=args.n_persons,
            n_occupations=args.n_occupations,
            n_industries=args.n_industries,
            n_education_levels=args.n_education_levels,
            schema=CategorySchema(
                args.category, tuple(g.strip() for g in args.groups.split(","))
            ),
            segregation=args.segregation,
            birth_year_range=birth_range,
            seed=args.seed,
            disjoint_supports=args.disjoint_supports,
            concentration=args.concentration,
            extra_iid_categories=tuple(
                _parse_extra_category(s) for s in args.extra_category
            ),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    frame = synth.generate_frame(params)
    synth.write_microdata_csv(frame, args.out)
    if args.config_out:
        with open(args.config_out, "w", encoding="utf-8") as fh:
            fh.write(synth.config_text(params))
    print(f"persons={len(frame)} occupations={params.n_occupations} out={args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="assortnet",
        description="Occupational networks and assortativity series from microdata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_category=True):
        p.add_argument("--input", help="microdata CSV")
        p.add_argument("--config", help="analysis config file")
        p.add_argument("--min-cell", type=int, default=None,
                       help="override the minimum records per occupation")
        p.add_argument("--unweighted", action="store_true",
                       help="ignore survey weights (count records instead)")
        if with_category:
            p.add_argument("--category", help="category to analyze (default: first configured)")

    p = sub.add_parser("build-graph", help="build one occupational network")
    common(p)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_build_graph, require_input=True)

    p = sub.add_parser("assort", help="measure assortativity on one network")
    common(p)
    p.add_argument("--edges", help="prebuilt edge-list CSV (with --attributes)")
    p.add_argument("--attributes", help="prebuilt attribute-matrix CSV (with --edges)")
    p.add_argument("--oracle", action="store_true",
                   help="also run the O(n^4) definitional oracle and print the difference")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_assort, require_input=False)

    p = sub.add_parser("series", help="sliding birth-cohort assortativity series")
    common(p, with_category=False)
    p.add_argument("--category", action="append", default=None,
                   help="category to include (repeatable; default: all configured)")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--windows", default=DEFAULT_WINDOWS,
                   help="first:last:width:step birth-cohort grid "
                        f"(default {DEFAULT_WINDOWS})")
    p.add_argument("--dump-edges", action="store_true",
                   help="write per-window edge lists for auditing")
    p.set_defaults(func=cmd_series, require_input=True)

    p = sub.add_parser("synth", help="generate synthetic microdata")
    p.add_argument("--out", required=True, help="output microdata CSV")
    p.add_argument("--n-persons", type=int, default=100_000)
    p.add_argument("--n-occupations", type=int, default=30)
    p.add_argument("--n-industries", type=int, default=20)
    p.add_argument("--n-education-levels", type=int, default=4)
    p.add_argument("--segregation", type=float, default=0.5,
                   help="segregation dial in [0, 1]")
    p.add_argument("--category", default="group")
    p.add_argument("--groups", default="A,B,C", help="comma-separated group labels")
    p.add_argument("--extra-category", action="append", default=[],
                   metavar="NAME=G1,G2,...",
                   help="extra category column drawn independently of occupation")
    p.add_argument("--birth-years", default="1940:1989", metavar="MIN:MAX")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--disjoint-supports", action="store_true",
                   help="give each group block its own industries")
    p.add_argument("--concentration", type=float, default=1.0,
                   help="Dirichlet concentration of occupation supports")
    p.add_argument("--config-out", help="also write a matching analysis config")
    p.set_defaults(func=cmd_synth, require_input=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "require_input", False):
        if not args.input or not args.config:
            parser.error(f"{args.command} requires --input and --config")
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssortnetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
