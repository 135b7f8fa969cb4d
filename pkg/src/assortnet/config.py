"""Analysis configuration.

The config file is line-oriented ``key = value`` under ``[sections]``:

    [analysis]
    min_cell = 30
    weighted = true
    birth_year_min = 1900
    birth_year_max = 2010

    [education]
    # raw code on the left, coarse level 1-4 on the right
    01 = 1
    02 = 2

    [category:gender]
    groups = male, female

Every recode target must be a level in 1-4; each category needs at least
two distinct, ordered group labels (the order fixes vector components).
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from typing import Mapping

from .builder import BIRTH_YEAR_RANGE, EDUCATION_LEVELS, CategorySchema
from .errors import ConfigError

_CATEGORY_PREFIX = "category:"


@dataclass(frozen=True)
class AnalysisConfig:
    education_map: Mapping[str, int]
    categories: Mapping[str, CategorySchema]
    min_cell: int = 30
    weighted: bool = True
    birth_year_min: int = BIRTH_YEAR_RANGE[0]
    birth_year_max: int = BIRTH_YEAR_RANGE[1]

    def __post_init__(self):
        if not self.education_map:
            raise ConfigError("education recode map must not be empty")
        for raw, level in self.education_map.items():
            if level not in EDUCATION_LEVELS:
                raise ConfigError(
                    f"education code {raw!r} maps to {level!r}, must be a level in 1-4"
                )
        if not self.categories:
            raise ConfigError("at least one category must be declared")
        if self.min_cell < 1:
            raise ConfigError("min_cell must be >= 1")
        if self.birth_year_min > self.birth_year_max:
            raise ConfigError("birth_year_min must not exceed birth_year_max")

    def schema(self, name: str) -> CategorySchema:
        try:
            return self.categories[name]
        except KeyError:
            known = ", ".join(self.categories)
            raise ConfigError(f"unknown category {name!r}; configured: {known}") from None


def parse_config(text: str) -> AnalysisConfig:
    """Parse configuration text. Unknown sections are rejected so typos
    fail loudly instead of being ignored."""
    cp = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#", ";"), interpolation=None
    )
    cp.optionxform = str  # raw codes are case-sensitive
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None

    kwargs = {}
    if cp.has_section("analysis"):
        sec = cp["analysis"]
        known = {"min_cell", "weighted", "birth_year_min", "birth_year_max"}
        for key in sec:
            if key not in known:
                raise ConfigError(f"unknown key {key!r} in [analysis]")
        try:
            if "min_cell" in sec:
                kwargs["min_cell"] = sec.getint("min_cell")
            if "weighted" in sec:
                kwargs["weighted"] = sec.getboolean("weighted")
            if "birth_year_min" in sec:
                kwargs["birth_year_min"] = sec.getint("birth_year_min")
            if "birth_year_max" in sec:
                kwargs["birth_year_max"] = sec.getint("birth_year_max")
        except ValueError as exc:
            raise ConfigError(f"bad value in [analysis]: {exc}") from None

    if not cp.has_section("education"):
        raise ConfigError("missing [education] section")
    education_map = {}
    for raw, value in cp["education"].items():
        try:
            education_map[raw] = int(value)
        except ValueError:
            raise ConfigError(
                f"education code {raw!r} maps to {value!r}, must be a level in 1-4"
            ) from None

    categories: dict[str, CategorySchema] = {}
    for section in cp.sections():
        if section in ("analysis", "education"):
            continue
        if not section.startswith(_CATEGORY_PREFIX):
            raise ConfigError(f"unknown section [{section}]")
        name = section[len(_CATEGORY_PREFIX):].strip()
        if "groups" not in cp[section]:
            raise ConfigError(f"[{section}] needs a 'groups' entry")
        groups = tuple(g.strip() for g in cp[section]["groups"].split(",") if g.strip())
        categories[name] = CategorySchema(name, groups)

    return AnalysisConfig(education_map=education_map, categories=categories, **kwargs)


def load_config(path) -> AnalysisConfig:
    """Read and parse a config file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
