"""Microdata CSV ingestion with an explicit exclusion report.

Input schema (UTF-8, header required):

    person_id,weight,birth_year,occupation_code,industry_code,education_code,<category columns...>

The category columns are the ones declared in the analysis config. Rows
with missing or invalid fields are excluded and counted per reason, never
imputed. Education is recoded to the coarse 1-4 levels during ingestion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np
import pandas as pd

from .builder import BASE_COLUMNS
from .config import AnalysisConfig
from .errors import ConfigError


@dataclass(frozen=True)
class IngestionReport:
    """Counts of rows read, kept and excluded (by first failing reason)."""

    n_rows: int
    n_kept: int
    exclusions: Mapping[str, int]
    unknown_education_codes: Mapping[str, int]

    def to_text(self) -> str:
        lines = [
            f"rows_read {self.n_rows}",
            f"rows_kept {self.n_kept}",
            f"rows_excluded {self.n_rows - self.n_kept}",
        ]
        for reason in sorted(self.exclusions):
            lines.append(f"excluded[{reason}] {self.exclusions[reason]}")
        for code in sorted(self.unknown_education_codes):
            lines.append(
                f"unknown_education_code[{code}] {self.unknown_education_codes[code]}"
            )
        return "\n".join(lines) + "\n"


def read_microdata(path, config: AnalysisConfig) -> tuple[pd.DataFrame, IngestionReport]:
    """Load a microdata CSV, validate it and recode education.

    Returns the kept rows (with an added integer ``education_level``
    column) and the exclusion report. Structural problems (missing columns)
    raise ConfigError; bad rows are excluded, not fatal.
    """
    df = pd.read_csv(path, dtype=str, keep_default_na=False)
    needed = list(BASE_COLUMNS) + list(config.categories)
    missing = [c for c in needed if c not in df.columns]
    if missing:
        raise ConfigError(f"input is missing column(s): {', '.join(missing)}")

    n_rows = len(df)
    excluded = np.zeros(n_rows, dtype=bool)
    exclusions: dict[str, int] = {}

    def drop(mask: np.ndarray, reason: str) -> None:
        fresh = mask & ~excluded
        count = int(fresh.sum())
        if count:
            exclusions[reason] = count
            excluded[fresh] = True

    weight = pd.to_numeric(df["weight"], errors="coerce").to_numpy(dtype=np.float64)
    drop(~np.isfinite(weight) | (weight <= 0.0), "invalid_weight")

    byear = pd.to_numeric(df["birth_year"], errors="coerce").to_numpy(dtype=np.float64)
    bad_year = (
        ~np.isfinite(byear)
        | (byear != np.floor(byear))
        | (byear < config.birth_year_min)
        | (byear > config.birth_year_max)
    )
    drop(bad_year, "invalid_birth_year")

    for column in ("occupation_code", "industry_code", "education_code"):
        blank = df[column].str.strip().eq("").to_numpy()
        drop(blank, f"missing_{column.removesuffix('_code')}")

    level = df["education_code"].map(config.education_map)
    unknown = level.isna().to_numpy() & ~excluded
    unknown_codes = (
        df.loc[unknown, "education_code"].value_counts().to_dict() if unknown.any() else {}
    )
    drop(level.isna().to_numpy(), "unknown_education")

    for name in config.categories:
        blank = df[name].str.strip().eq("").to_numpy()
        drop(blank, f"missing_category:{name}")

    kept = ~excluded
    out = pd.DataFrame(
        {
            "person_id": df.loc[kept, "person_id"].to_numpy(),
            "weight": weight[kept],
            "birth_year": byear[kept].astype(np.int64),
            "occupation_code": df.loc[kept, "occupation_code"].to_numpy(),
            "industry_code": df.loc[kept, "industry_code"].to_numpy(),
            "education_code": df.loc[kept, "education_code"].to_numpy(),
            "education_level": level.to_numpy(dtype=np.float64)[kept].astype(np.int64),
        }
    )
    for name in config.categories:
        out[name] = df.loc[kept, name].to_numpy()

    report = IngestionReport(
        n_rows=n_rows,
        n_kept=int(kept.sum()),
        exclusions=exclusions,
        unknown_education_codes={str(k): int(v) for k, v in unknown_codes.items()},
    )
    return out, report


def write_report(report: IngestionReport, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report.to_text())
