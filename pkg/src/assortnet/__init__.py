"""Occupational networks and assortativity measures from survey microdata.

Workflow: person-level records become per-occupation distributions over the
education x industry grid; pairwise similarity (1 minus total variation
distance) defines a weighted network; per-occupation group-representation
vectors attribute the nodes; scalar and vector (distance-correlation)
assortativity summarize how strongly the network is stratified along the
chosen category, per birth cohort.
"""

from ._kernels import available_backends, backend_name
from .builder import (
    CategorySchema,
    OnsResult,
    PersonRecord,
    RepresentationVector,
    SupportDistribution,
    build_edge_weights,
    build_ons,
    recode_education,
    representation_vector,
    support_distribution,
    tv_distance,
)
from .cohorts import (
    CohortWindow,
    SeriesPoint,
    SeriesTable,
    cohort_windows,
    run_cohort,
    run_series,
    write_category_dat,
    write_series_csv,
)
from .config import AnalysisConfig, load_config, parse_config
from .errors import (
    AllZeroWeights,
    AssortnetError,
    ConfigError,
    DegenerateAttribute,
    EmptyOccupation,
    NumericalFailure,
    TooFewOccupations,
    UnknownEducationCode,
    ZeroWorkforceGroup,
)
from .graph import (
    EdgeWeightMatrix,
    NodeMarginals,
    NormalizedAdjacency,
    node_marginals,
    normalize_adjacency,
    write_edge_list,
)
from .ingest import IngestionReport, read_microdata, write_report
from .measures import (
    AttributeMatrix,
    PairwiseDistanceMatrix,
    ScalarAttributes,
    averaged_scalar_assortativity,
    dcor_oracle,
    dcor_oracle_parts,
    pairwise_distances,
    scalar_assortativity,
    vector_assortativity,
)
from .synth import SynthParams, generate_frame, generate_population, write_microdata_csv

__version__ = "0.1.0"

__all__ = [
    "AllZeroWeights",
    "AnalysisConfig",
    "AssortnetError",
    "AttributeMatrix",
    "CategorySchema",
    "CohortWindow",
    "ConfigError",
    "DegenerateAttribute",
    "EdgeWeightMatrix",
    "EmptyOccupation",
    "IngestionReport",
    "NodeMarginals",
    "NormalizedAdjacency",
    "NumericalFailure",
    "OnsResult",
    "PairwiseDistanceMatrix",
    "PersonRecord",
    "RepresentationVector",
    "ScalarAttributes",
    "SeriesPoint",
    "SeriesTable",
    "SupportDistribution",
    "SynthParams",
    "TooFewOccupations",
    "UnknownEducationCode",
    "ZeroWorkforceGroup",
    "available_backends",
    "averaged_scalar_assortativity",
    "backend_name",
    "build_edge_weights",
    "build_ons",
    "cohort_windows",
    "dcor_oracle",
    "dcor_oracle_parts",
    "generate_frame",
    "generate_population",
    "load_config",
    "node_marginals",
    "normalize_adjacency",
    "pairwise_distances",
    "parse_config",
    "read_microdata",
    "recode_education",
    "representation_vector",
    "run_cohort",
    "run_series",
    "scalar_assortativity",
    "support_distribution",
    "tv_distance",
    "vector_assortativity",
    "write_category_dat",
    "write_edge_list",
    "write_microdata_csv",
    "write_report",
    "write_series_csv",
]
