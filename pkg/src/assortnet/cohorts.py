"""Sliding birth-cohort series of assortativity measures.

The population is windowed by birth year; each (window, category) cell gets
its own occupational network and both measures. Degenerate cells are data,
not failures: they are emitted with a status word and empty value fields so
downstream plots can show gaps honestly.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .builder import CategorySchema, _as_frame, build_ons
from .config import AnalysisConfig
from .errors import (
    AllZeroWeights,
    DegenerateAttribute,
    TooFewOccupations,
    ZeroWorkforceGroup,
)
from .graph import write_edge_list
from .measures import averaged_scalar_assortativity, vector_assortativity

STATUS_OK = "ok"
STATUS_DEGENERATE = "degenerate_attribute"
STATUS_TOO_FEW = "too_few_occupations"
STATUS_EMPTY = "empty_window"

SERIES_HEADER = (
    "category,window_start,window_end,vector_assortativity,"
    "avg_scalar_assortativity,n_occupations,n_persons,total_weight,status"
)


@dataclass(frozen=True)
class CohortWindow:
    """Inclusive birth-year interval."""

    start_year: int
    end_year: int

    def __post_init__(self):
        if self.start_year > self.end_year:
            raise ValueError(f"window start {self.start_year} after end {self.end_year}")

    @property
    def width(self) -> int:
        return self.end_year - self.start_year + 1

    def contains(self, year: int) -> bool:
        return self.start_year <= year <= self.end_year


@dataclass(frozen=True)
class SeriesPoint:
    """One (window, category) result. A measure is None when it raised a
    degeneracy instead of producing a value; ``detail`` keeps the
    diagnostic. For points whose network could not be built, the counts
    describe the window population that failed."""

    window: CohortWindow
    category: str
    vector_r: float | None
    avg_scalar_r: float | None
    n_occupations: int
    n_persons: int
    total_weight: float
    status: str
    detail: str = ""


@dataclass(frozen=True)
class SeriesTable:
    """Series points sorted by (category, window start), no duplicates."""

    points: tuple[SeriesPoint, ...]

    def __post_init__(self):
        pts = tuple(
            sorted(self.points, key=lambda p: (p.category, p.window.start_year))
        )
        keys = [(p.category, p.window.start_year, p.window.end_year) for p in pts]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (category, window) pairs in series")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def cohort_windows(
    first_start: int, last_start: int, width: int, step: int
) -> list[CohortWindow]:
    """Windows [s, s+width-1] for s = first_start, first_start+step, ...
    up to last_start."""
    if first_start > last_start:
        raise ValueError(f"first start {first_start} is after last start {last_start}")
    if width < 1 or step < 1:
        raise ValueError("width and step must be >= 1")
    return [
        CohortWindow(s, s + width - 1) for s in range(first_start, last_start + 1, step)
    ]


def run_cohort(
    records,
    window: CohortWindow,
    schema: CategorySchema,
    config: AnalysisConfig,
    dump_edges_to=None,
) -> SeriesPoint:
    """Build one window's network for one category and measure it.

    Analysis-level degeneracies (no usable network, constant attributes)
    become status words on the returned point; only genuine I/O and
    programming errors propagate.
    """
    frame = _as_frame(records)
    years = frame["birth_year"].to_numpy()
    cohort = frame.loc[(years >= window.start_year) & (years <= window.end_year)]
    if cohort.empty:
        return SeriesPoint(window, schema.name, None, None, 0, 0, 0.0, STATUS_EMPTY)
    cohort_weight = float(cohort["weight"].sum()) if config.weighted else float(len(cohort))

    try:
        ons = build_ons(
            cohort, schema, min_cell=config.min_cell, weighted=config.weighted
        )
    except (TooFewOccupations, AllZeroWeights) as exc:
        return SeriesPoint(
            window, schema.name, None, None, 0, int(len(cohort)), cohort_weight,
            STATUS_TOO_FEW, detail=str(exc),
        )
    except ZeroWorkforceGroup as exc:
        return SeriesPoint(
            window, schema.name, None, None, 0, int(len(cohort)), cohort_weight,
            STATUS_DEGENERATE, detail=str(exc),
        )

    if dump_edges_to is not None:
        write_edge_list(dump_edges_to, ons.edge_weights, ons.adjacency, ons.labels)

    details = []
    try:
        vector_r = vector_assortativity(ons.adjacency, ons.attributes)
    except DegenerateAttribute as exc:
        vector_r, details = None, details + [f"vector: {exc}"]
    try:
        avg_scalar_r = averaged_scalar_assortativity(ons.adjacency, ons.attributes)
    except DegenerateAttribute as exc:
        avg_scalar_r, details = None, details + [f"avg_scalar: {exc}"]

    status = STATUS_OK if not details else STATUS_DEGENERATE
    return SeriesPoint(
        window,
        schema.name,
        vector_r,
        avg_scalar_r,
        len(ons.labels),
        ons.n_persons,
        ons.total_weight,
        status,
        detail="; ".join(details),
    )


def _thread_count(threads: int | None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("ASSORTNET_THREADS", "")
    return max(1, int(env)) if env else 1


def run_series(
    records,
    windows: Sequence[CohortWindow],
    schemas: Sequence[CategorySchema],
    config: AnalysisConfig,
    threads: int | None = None,
    dump_dir=None,
) -> SeriesTable:
    """Evaluate the (window x category) grid into a sorted series table.

    Cells are independent; with threads > 1 (or ASSORTNET_THREADS set) they
    are evaluated in a thread pool. Assembly is sorted either way, so the
    result does not depend on evaluation order.
    """
    frame = _as_frame(records)
    if dump_dir is not None:
        Path(dump_dir).mkdir(parents=True, exist_ok=True)

    def dump_path(schema, window):
        if dump_dir is None:
            return None
        return Path(dump_dir) / f"{schema.name}_{window.start_year}-{window.end_year}_edges.csv"

    tasks = [(schema, window) for schema in schemas for window in windows]
    n_threads = _thread_count(threads)
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            points = list(
                pool.map(
                    lambda t: run_cohort(
                        frame, t[1], t[0], config, dump_edges_to=dump_path(*t)
                    ),
                    tasks,
                )
            )
    else:
        points = [
            run_cohort(frame, window, schema, config, dump_edges_to=dump_path(schema, window))
            for schema, window in tasks
        ]
    return SeriesTable(tuple(points))


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.17g}"


def write_series_csv(table: SeriesTable, path) -> None:
    """Emit the series as CSV with full double precision."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(SERIES_HEADER + "\n")
        for p in table:
            fh.write(
                f"{p.category},{p.window.start_year},{p.window.end_year},"
                f"{_fmt(p.vector_r)},{_fmt(p.avg_scalar_r)},"
                f"{p.n_occupations},{p.n_persons},{p.total_weight:.17g},{p.status}\n"
            )


def write_category_dat(table: SeriesTable, out_dir) -> list[Path]:
    """One gnuplot-friendly two-column file (window start, vector r) per
    category; undefined points are skipped."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for category in sorted({p.category for p in table}):
        path = out_dir / f"{category}.dat"
        with open(path, "w", encoding="utf-8") as fh:
            for p in table:
                if p.category == category and p.vector_r is not None:
                    fh.write(f"{p.window.start_year} {p.vector_r:.17g}\n")
        paths.append(path)
    return paths
