"""Synthetic microdata with a controllable segregation dial.

Generative model: occupations are split into one block per group. Each
person draws a group uniformly, then an occupation — from their group's
block with probability equal to the segregation parameter, otherwise
uniformly from all occupations. Education and industry come from the
occupation's own seeded Dirichlet distribution over the education x
industry grid; weights are 1 and birth years uniform over the configured
range. At segregation 0 the group label is independent of occupation by
construction; at 1 (with per-block disjoint industry supports) each group
lives in its own disconnected sub-network.
"""

from __future__ import annotations

import io
import string
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .builder import BASE_COLUMNS, BIRTH_YEAR_RANGE, CategorySchema, PersonRecord

_INDUSTRY_LETTERS = string.ascii_uppercase


@dataclass(frozen=True)
class SynthParams:
    n_persons: int = 100_000
    n_occupations: int = 30
    n_industries: int = 20
    n_education_levels: int = 4
    schema: CategorySchema = CategorySchema("group", ("A", "B", "C"))
    segregation: float = 0.5
    birth_year_range: tuple[int, int] = (1940, 1989)
    seed: int = 0
    disjoint_supports: bool = False
    concentration: float = 1.0
    extra_iid_categories: tuple[CategorySchema, ...] = ()

    def __post_init__(self):
        if self.n_persons < 2 or self.n_occupations < 2 or self.n_industries < 2:
            raise ValueError("person, occupation and industry counts must be >= 2")
        if not 1 <= self.n_education_levels <= 4:
            raise ValueError("education levels must be between 1 and 4")
        if not 0.0 <= self.segregation <= 1.0:
            raise ValueError(f"segregation must be in [0, 1], got {self.segregation!r}")
        if self.n_industries > len(_INDUSTRY_LETTERS):
            raise ValueError("at most 26 industries (single-letter section codes)")
        if self.n_occupations < self.schema.d:
            raise ValueError("need at least one occupation per group block")
        if self.disjoint_supports and self.n_industries < self.schema.d:
            raise ValueError("disjoint supports need at least one industry per group")
        lo, hi = self.birth_year_range
        if lo > hi or lo < BIRTH_YEAR_RANGE[0] or hi > BIRTH_YEAR_RANGE[1]:
            raise ValueError(f"birth year range {self.birth_year_range} is not plausible")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.concentration <= 0:
            raise ValueError("concentration must be positive")
        names = [self.schema.name] + [s.name for s in self.extra_iid_categories]
        if len(set(names)) != len(names):
            raise ValueError("category names must be distinct")
        object.__setattr__(
            self, "extra_iid_categories", tuple(self.extra_iid_categories)
        )


def occupation_codes(n: int) -> list[str]:
    """Zero-padded occupation codes, so lexicographic order is numeric."""
    width = max(2, len(str(n - 1)))
    return [f"{i:0{width}d}" for i in range(n)]


def generate_frame(params: SynthParams) -> pd.DataFrame:
    """Vectorized generation; deterministic for a fixed seed."""
    rng = np.random.default_rng(params.seed)
    n = params.n_persons
    n_occ = params.n_occupations
    n_ind = params.n_industries
    n_edu = params.n_education_levels
    groups = params.schema.groups
    n_groups = len(groups)
    n_cells = n_edu * n_ind

    occ_blocks = np.array_split(np.arange(n_occ), n_groups)
    ind_blocks = np.array_split(np.arange(n_ind), n_groups)

    # one distribution over the education x industry grid per occupation;
    # under disjoint supports a block only uses its own industries
    supports = np.zeros((n_occ, n_cells))
    for block_idx, occs in enumerate(occ_blocks):
        if params.disjoint_supports:
            allowed = np.array(
                [e * n_ind + i for e in range(n_edu) for i in ind_blocks[block_idx]]
            )
        else:
            allowed = np.arange(n_cells)
        for o in occs:
            supports[o, allowed] = rng.dirichlet(
                np.full(allowed.size, params.concentration)
            )
    cum = np.cumsum(supports, axis=1)

    group_idx = rng.integers(0, n_groups, n)
    stay = rng.random(n) < params.segregation
    occ_idx = np.empty(n, dtype=np.int64)
    for g in range(n_groups):
        mask = stay & (group_idx == g)
        occ_idx[mask] = occ_blocks[g][rng.integers(0, occ_blocks[g].size, int(mask.sum()))]
    roam = ~stay
    occ_idx[roam] = rng.integers(0, n_occ, int(roam.sum()))

    u = rng.random(n)
    cell_idx = np.empty(n, dtype=np.int64)
    for o in range(n_occ):
        mask = occ_idx == o
        cell_idx[mask] = np.searchsorted(cum[o], u[mask], side="right")
    np.clip(cell_idx, 0, n_cells - 1, out=cell_idx)

    lo, hi = params.birth_year_range
    birth_years = rng.integers(lo, hi + 1, n)

    codes = occupation_codes(n_occ)
    id_width = len(str(n - 1))
    frame = pd.DataFrame(
        {
            "person_id": [f"p{i:0{id_width}d}" for i in range(n)],
            "weight": np.ones(n),
            "birth_year": birth_years,
            "occupation_code": [codes[o] for o in occ_idx],
            "industry_code": [_INDUSTRY_LETTERS[c % n_ind] for c in cell_idx],
            "education_code": [str(c // n_ind + 1) for c in cell_idx],
            params.schema.name: [groups[g] for g in group_idx],
        }
    )
    for extra in params.extra_iid_categories:
        idx = rng.integers(0, extra.d, n)
        frame[extra.name] = [extra.groups[i] for i in idx]
    return frame


def generate_population(params: SynthParams) -> list[PersonRecord]:
    """Same generation as generate_frame, materialized as records."""
    frame = generate_frame(params)
    categories = [params.schema.name] + [s.name for s in params.extra_iid_categories]
    return [
        PersonRecord(
            person_id=row.person_id,
            weight=float(row.weight),
            birth_year=int(row.birth_year),
            occupation_code=row.occupation_code,
            industry_code=row.industry_code,
            education_code=row.education_code,
            category_values={name: getattr(row, name) for name in categories},
        )
        for row in frame.itertuples(index=False)
    ]


def write_microdata_csv(frame: pd.DataFrame, path) -> None:
    """Write a generated population in the microdata CSV layout."""
    ordered = list(BASE_COLUMNS) + [c for c in frame.columns if c not in BASE_COLUMNS]
    frame.loc[:, ordered].to_csv(path, index=False)


def config_text(params: SynthParams, min_cell: int = 30, weighted: bool = True) -> str:
    """Analysis config matching a generated population: identity education
    recode plus the generating category schemas."""
    out = io.StringIO()
    out.write("[analysis]\n")
    out.write(f"min_cell = {min_cell}\n")
    out.write(f"weighted = {'true' if weighted else 'false'}\n\n")
    out.write("[education]\n")
    for level in range(1, params.n_education_levels + 1):
        out.write(f"{level} = {level}\n")
    for schema in (params.schema, *params.extra_iid_categories):
        out.write(f"\n[category:{schema.name}]\n")
        out.write(f"groups = {', '.join(schema.groups)}\n")
    return out.getvalue()
