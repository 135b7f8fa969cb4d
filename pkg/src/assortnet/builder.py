"""Build occupational networks from person-level microdata.

Each occupation is summarized by the distribution of its (weighted)
workforce over the education-level x industry grid. Pairwise similarity is
one minus the total variation distance between those distributions; the
resulting symmetric weight matrix, with self-loops removed, is normalized
into an edge distribution. Node attributes are per-occupation vectors of
group representation ratios: the group's weighted share inside the
occupation divided by its share in the in-scope workforce, so parity is 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
import pandas as pd

from . import _kernels
from .errors import (
    ConfigError,
    EmptyOccupation,
    TooFewOccupations,
    UnknownEducationCode,
    ZeroWorkforceGroup,
)
from .graph import EdgeWeightMatrix, NormalizedAdjacency, normalize_adjacency
from .measures import AttributeMatrix

BIRTH_YEAR_RANGE = (1900, 2010)
EDUCATION_LEVELS = (1, 2, 3, 4)

#: Fixed leading columns of the microdata CSV; category columns follow.
BASE_COLUMNS = (
    "person_id",
    "weight",
    "birth_year",
    "occupation_code",
    "industry_code",
    "education_code",
)


@dataclass(frozen=True)
class PersonRecord:
    """One surveyed individual."""

    person_id: str
    weight: float
    birth_year: int
    occupation_code: str
    industry_code: str
    education_code: str
    category_values: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not (math.isfinite(self.weight) and self.weight > 0):
            raise ValueError(f"weight must be positive, got {self.weight!r}")
        if not (BIRTH_YEAR_RANGE[0] <= self.birth_year <= BIRTH_YEAR_RANGE[1]):
            raise ValueError(
                f"birth year {self.birth_year} outside plausible range {BIRTH_YEAR_RANGE}"
            )


@dataclass(frozen=True)
class CategorySchema:
    """A categorical dimension and its ordered group labels. The order
    fixes the component order of representation vectors."""

    name: str
    groups: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(str(g) for g in self.groups))
        if not self.name:
            raise ConfigError("category name must be non-empty")
        if len(self.groups) < 2:
            raise ConfigError(f"category {self.name!r} needs at least two groups")
        if len(set(self.groups)) != len(self.groups):
            raise ConfigError(f"category {self.name!r} has duplicate groups")

    @property
    def d(self) -> int:
        return len(self.groups)


@dataclass(frozen=True)
class SupportDistribution:
    """An occupation's probability mass over (education_level, industry)."""

    occupation_code: str
    mass: Mapping[tuple[int, str], float]

    def __post_init__(self):
        clean = {}
        for (level, industry), p in self.mass.items():
            level = int(level)
            if level not in EDUCATION_LEVELS:
                raise ValueError(f"education level must be 1-4, got {level}")
            if p < 0:
                raise ValueError("probability mass must be non-negative")
            clean[(level, str(industry))] = float(p)
        if not clean:
            raise ValueError("support distribution must not be empty")
        total = math.fsum(clean.values())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"mass must sum to 1 within 1e-12, got {total!r}")
        object.__setattr__(self, "mass", clean)


@dataclass(frozen=True)
class RepresentationVector:
    """Per-group representation ratios for one occupation, in schema group
    order. A component of 1 means the group is represented at parity with
    the workforce."""

    occupation_code: str
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError("representation values must be a finite non-negative vector")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class OnsResult:
    """Everything build_ons produces: the normalized network, the attribute
    matrix, the node label table, and bookkeeping about what was dropped."""

    adjacency: NormalizedAdjacency
    attributes: AttributeMatrix
    labels: tuple[str, ...]
    edge_weights: EdgeWeightMatrix
    dropped_occupations: tuple[tuple[str, int], ...]
    n_persons: int
    total_weight: float
    n_invalid_category: int


def recode_education(raw: str, recode_map: Mapping[str, int]) -> int:
    """Map a raw education code to one of the four coarse levels
    (1 below-primary through 4 graduation-and-above)."""
    try:
        return int(recode_map[raw])
    except KeyError:
        raise UnknownEducationCode(raw) from None


def _coerce_level(value) -> int:
    try:
        level = int(value)
    except (TypeError, ValueError):
        level = -1
    if level not in EDUCATION_LEVELS:
        raise ValueError(
            f"education must already be recoded to a level in 1-4, got {value!r}"
        )
    return level


def support_distribution(
    records: Iterable[PersonRecord], weighted: bool = True
) -> SupportDistribution:
    """Weighted distribution of one occupation's records over the
    education-level x industry cells."""
    records = list(records)
    if not records:
        raise EmptyOccupation("no records for occupation")
    codes = {r.occupation_code for r in records}
    if len(codes) != 1:
        raise ValueError(f"records span multiple occupations: {sorted(codes)}")
    cells: dict[tuple[int, str], list[float]] = {}
    for r in records:
        key = (_coerce_level(r.education_code), r.industry_code)
        cells.setdefault(key, []).append(r.weight if weighted else 1.0)
    total = math.fsum(w for ws in cells.values() for w in ws)
    mass = {key: math.fsum(ws) / total for key, ws in sorted(cells.items())}
    return SupportDistribution(codes.pop(), mass)


def tv_distance(p: SupportDistribution, q: SupportDistribution) -> float:
    """Total variation distance over the union of the two supports:
    half the L1 distance, in [0, 1]."""
    cells = sorted(set(p.mass) | set(q.mass))
    return 0.5 * math.fsum(abs(p.mass.get(c, 0.0) - q.mass.get(c, 0.0)) for c in cells)


def build_edge_weights(dists: Sequence[SupportDistribution]) -> EdgeWeightMatrix:
    """Edge weights between occupations: 1 minus the pairwise total
    variation distance, with the diagonal forced to zero (no self-loops)."""
    if len(dists) < 2:
        raise TooFewOccupations(f"need at least 2 occupations, got {len(dists)}")
    cells = sorted(set().union(*(d.mass.keys() for d in dists)))
    index = {c: i for i, c in enumerate(cells)}
    p = np.zeros((len(dists), len(cells)))
    for i, d in enumerate(dists):
        for cell, value in d.mass.items():
            p[i, index[cell]] = value
    tv = _kernels.tv_matrix(p)
    w = np.clip(1.0 - tv, 0.0, 1.0)
    # rounding keeps a TV of 1.0 from being hit exactly, so detect truly
    # disjoint supports via their overlap and zero those pairs outright
    overlap = np.minimum(p[:, None, :], p[None, :, :]).sum(axis=2)
    w[overlap == 0.0] = 0.0
    np.fill_diagonal(w, 0.0)
    return EdgeWeightMatrix(w)


def representation_vector(
    records_all: Iterable[PersonRecord],
    occupation_code: str,
    schema: CategorySchema,
    weighted: bool = True,
) -> RepresentationVector:
    """Representation ratios of each schema group in one occupation,
    relative to the whole workforce described by ``records_all``."""
    records = list(records_all)
    if not records:
        raise EmptyOccupation("workforce is empty")

    def shares(rs: list[PersonRecord]) -> tuple[np.ndarray, float]:
        per_group = {g: [] for g in schema.groups}
        for r in rs:
            value = r.category_values.get(schema.name)
            if value not in per_group:
                raise ValueError(
                    f"record {r.person_id!r} has {schema.name}={value!r}, "
                    f"not one of {schema.groups}"
                )
            per_group[value].append(r.weight if weighted else 1.0)
        total = math.fsum(w for ws in per_group.values() for w in ws)
        return np.array([math.fsum(per_group[g]) / total for g in schema.groups]), total

    workforce_shares, _ = shares(records)
    for g, s in zip(schema.groups, workforce_shares):
        if s == 0.0:
            raise ZeroWorkforceGroup(f"group {g!r} has zero weight in the workforce")
    occ_records = [r for r in records if r.occupation_code == occupation_code]
    if not occ_records:
        raise EmptyOccupation(f"occupation {occupation_code!r} has no records")
    occ_shares, _ = shares(occ_records)
    return RepresentationVector(occupation_code, occ_shares / workforce_shares)


def records_to_frame(records: Iterable[PersonRecord]) -> pd.DataFrame:
    """Materialize records into the columnar layout the builder uses."""
    records = list(records)
    categories = sorted(set().union(*(r.category_values.keys() for r in records))) if records else []
    data = {
        "person_id": [r.person_id for r in records],
        "weight": np.array([r.weight for r in records], dtype=np.float64),
        "birth_year": np.array([r.birth_year for r in records], dtype=np.int64),
        "occupation_code": [r.occupation_code for r in records],
        "industry_code": [r.industry_code for r in records],
        "education_code": [str(r.education_code) for r in records],
    }
    for name in categories:
        data[name] = [r.category_values.get(name, "") for r in records]
    frame = pd.DataFrame(data)
    frame["education_level"] = np.array(
        [_coerce_level(r.education_code) for r in records], dtype=np.int64
    )
    return frame


def _as_frame(records) -> pd.DataFrame:
    if isinstance(records, pd.DataFrame):
        frame = records
        if "education_level" not in frame.columns:
            frame = frame.copy()
            frame["education_level"] = [
                _coerce_level(v) for v in frame["education_code"]
            ]
        return frame
    return records_to_frame(records)


def build_ons(
    records,
    schema: CategorySchema,
    min_cell: int = 30,
    weighted: bool = True,
) -> OnsResult:
    """Construct the occupational network and its attribute matrix.

    ``records`` is either a DataFrame in the microdata layout (with
    education already recoded) or an iterable of PersonRecord. Records
    whose group value is not in the schema are excluded and counted;
    occupations with fewer than ``min_cell`` records are dropped and
    reported. Surviving occupations are ordered lexicographically by code.
    """
    if min_cell < 1:
        raise ValueError("min_cell must be >= 1")
    frame = _as_frame(records)
    if schema.name not in frame.columns:
        raise ConfigError(f"category column {schema.name!r} missing from the data")

    valid = frame[schema.name].isin(schema.groups).to_numpy()
    n_invalid = int((~valid).sum())
    frame = frame.loc[valid]
    counts = frame.groupby("occupation_code", sort=True).size()
    kept = [str(c) for c in counts.index[counts.to_numpy() >= min_cell]]
    dropped = tuple(
        (str(c), int(n)) for c, n in counts.items() if int(n) < min_cell
    )
    if len(kept) < 2:
        raise TooFewOccupations(
            f"only {len(kept)} occupations have at least {min_cell} valid records"
        )
    kept.sort()
    sub = frame.loc[frame["occupation_code"].isin(kept)].copy()
    sub["_w"] = sub["weight"].to_numpy(dtype=np.float64) if weighted else 1.0

    cell_w = sub.groupby(
        ["occupation_code", "education_level", "industry_code"], sort=True
    )["_w"].sum()
    dists = []
    for code in kept:
        block = cell_w.loc[code]
        total = float(block.sum())
        mass = {
            (int(level), str(ind)): float(v) / total
            for (level, ind), v in block.items()
        }
        dists.append(SupportDistribution(code, mass))

    weights = build_edge_weights(dists)
    adjacency = normalize_adjacency(weights)

    group_w = (
        sub.groupby(schema.name, sort=True)["_w"]
        .sum()
        .reindex(list(schema.groups), fill_value=0.0)
    )
    for g, v in group_w.items():
        if float(v) == 0.0:
            raise ZeroWorkforceGroup(f"group {g!r} has zero weight in the workforce")
    total_w = float(sub["_w"].sum())
    workforce_shares = group_w.to_numpy(dtype=np.float64) / total_w

    occ_group = (
        sub.groupby(["occupation_code", schema.name], sort=True)["_w"]
        .sum()
        .unstack(fill_value=0.0)
        .reindex(index=kept, columns=list(schema.groups), fill_value=0.0)
        .to_numpy(dtype=np.float64)
    )
    occ_totals = occ_group.sum(axis=1, keepdims=True)
    x = (occ_group / occ_totals) / workforce_shares[None, :]

    return OnsResult(
        adjacency=adjacency,
        attributes=AttributeMatrix(x),
        labels=tuple(kept),
        edge_weights=weights,
        dropped_occupations=dropped,
        n_persons=int(len(sub)),
        total_weight=float(sub["weight"].sum() if weighted else len(sub)),
        n_invalid_category=n_invalid,
    )
