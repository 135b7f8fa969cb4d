"""Assortativity measures over the edge distribution of a weighted graph.

Two measures are provided. ``scalar_assortativity`` is the Pearson
correlation of a real-valued node attribute across the endpoints of a
randomly drawn edge. ``vector_assortativity`` generalizes it to vector
attributes as the distance correlation of the endpoint attribute pair,
computed in closed form at O(n^3). ``dcor_oracle`` evaluates the same
distance correlation straight from its definition as an O(n^4) sum; it is
public so the closed form can be audited on any input.

All measures raise DegenerateAttribute instead of returning a value when
the attribute carries no variation under the edge distribution: an
undefined correlation is not the same thing as measured independence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateAttribute, NumericalFailure
from .graph import NormalizedAdjacency, _readonly, node_marginals

#: Most negative value of an exactly-non-negative quantity that is still
#: attributed to rounding and clamped to zero. Anything below this raises
#: NumericalFailure rather than clamping silently.
CLAMP_FLOOR = -1e-12


@dataclass(frozen=True)
class ScalarAttributes:
    """One finite real attribute per node."""

    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.values, dtype=np.float64)
        if x.ndim != 1:
            raise ValueError("scalar attributes must form a vector")
        if not np.all(np.isfinite(x)):
            raise ValueError("scalar attributes must be finite")
        object.__setattr__(self, "values", _readonly(x))

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class AttributeMatrix:
    """One finite attribute vector per node, as an n x d matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.matrix, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] < 1:
            raise ValueError("attributes must form an n x d matrix with d >= 1")
        if not np.all(np.isfinite(x)):
            raise ValueError("attributes must be finite")
        object.__setattr__(self, "matrix", _readonly(x))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def d(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class PairwiseDistanceMatrix:
    """Euclidean distances between attribute rows: symmetric, non-negative,
    exactly zero diagonal."""

    distances: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.distances, dtype=np.float64)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.array_equal(b, b.T):
            raise ValueError("distance matrix must be symmetric")
        if np.any(b < 0.0) or not np.all(np.isfinite(b)):
            raise ValueError("distances must be finite and >= 0")
        if np.any(np.diagonal(b) != 0.0):
            raise ValueError("distance matrix diagonal must be exactly zero")
        object.__setattr__(self, "distances", _readonly(b))


def _as_scalar(x) -> ScalarAttributes:
    return x if isinstance(x, ScalarAttributes) else ScalarAttributes(np.asarray(x))


def _as_matrix(x) -> AttributeMatrix:
    return x if isinstance(x, AttributeMatrix) else AttributeMatrix(np.asarray(x))


def _clamp_nonneg(value: float, what: str) -> float:
    """Clamp a tiny negative rounding residue of a non-negative quantity to
    zero; fail loudly below CLAMP_FLOOR."""
    if value >= 0.0:
        return value
    if value < CLAMP_FLOOR:
        raise NumericalFailure(f"{what} = {value!r} is negative beyond rounding")
    return 0.0


def pairwise_distances(attributes) -> PairwiseDistanceMatrix:
    """Euclidean distance matrix between the attribute rows."""
    attrs = _as_matrix(attributes)
    return PairwiseDistanceMatrix(_kernels.euclidean_matrix(attrs.matrix))


def scalar_assortativity(adjacency: NormalizedAdjacency, attributes) -> float:
    """Pearson correlation of a scalar node attribute across edge endpoints.

    With A the edge distribution, k its marginals and x the attribute, this
    is sum_ij A_ij (x_i - xbar)(x_j - xbar) / sum_i k_i (x_i - xbar)^2 with
    xbar = sum_i k_i x_i. Lies in [-1, 1] up to rounding.

    Raises DegenerateAttribute when the attribute is constant over the
    nodes carrying marginal mass, where the correlation is undefined.
    """
    attrs = _as_scalar(attributes)
    if attrs.n != adjacency.n:
        raise ValueError("attribute length must match node count")
    k = node_marginals(adjacency).k
    x = attrs.values
    support = x[k > 0.0]
    if support.size == 0 or np.all(support == support[0]):
        raise DegenerateAttribute("attribute is constant under the edge distribution")
    _, cov, var = _kernels.scalar_terms(adjacency.matrix, k, x)
    if var == 0.0:
        raise DegenerateAttribute("attribute variance is zero under the edge distribution")
    return cov / var


def averaged_scalar_assortativity(adjacency: NormalizedAdjacency, attributes) -> float:
    """Mean of scalar assortativity over the columns of an attribute matrix.

    Raises DegenerateAttribute naming the first offending column if any
    column is constant.
    """
    attrs = _as_matrix(attributes)
    if attrs.n != adjacency.n:
        raise ValueError("attribute rows must match node count")
    values = []
    for col in range(attrs.d):
        try:
            values.append(scalar_assortativity(adjacency, attrs.matrix[:, col]))
        except DegenerateAttribute as exc:
            raise DegenerateAttribute(f"column {col}: {exc}") from None
    return math.fsum(values) / len(values)


def vector_assortativity(adjacency: NormalizedAdjacency, attributes) -> float:
    """Distance correlation of the endpoint attribute vectors of a random
    edge, in closed form.

    Returns r = sqrt(f1/f2) in [0, 1] up to rounding, where f1 is the
    squared distance covariance of the endpoint pair and f2 the squared
    distance variance of the (shared) endpoint marginal:

        f1 = <A, B.A.B> - 2 sum_ij A_ij m_i m_j + D^2
        f2 = sum_ii' k_i k_i' B_ii'^2 - 2 sum_i k_i m_i^2 + D^2

    with B the Euclidean distance matrix of the attribute rows,
    m = B.k and D = k'.B.k. The quadruple term is evaluated as two matrix
    products followed by an entrywise inner product, so the whole measure
    costs O(n^3). Tiny negative f1/f2 from rounding are clamped to zero
    (see CLAMP_FLOOR); f2 zero after clamping raises DegenerateAttribute.
    """
    attrs = _as_matrix(attributes)
    if attrs.n != adjacency.n:
        raise ValueError("attribute rows must match node count")
    k = node_marginals(adjacency).k
    b = _kernels.euclidean_matrix(attrs.matrix)
    f1, f2 = _kernels.f1_f2(adjacency.matrix, k, b)
    f1 = _clamp_nonneg(f1, "squared distance covariance")
    f2 = _clamp_nonneg(f2, "squared distance variance")
    if f2 == 0.0:
        raise DegenerateAttribute(
            "attribute distance variance is zero under the edge distribution"
        )
    if f1 == 0.0:
        return 0.0
    return math.sqrt(f1 / f2)


def dcor_oracle_parts(adjacency: NormalizedAdjacency, attributes) -> tuple[float, float]:
    """Definitional squared distance covariance and variance of the edge
    endpoints, as explicit sums with no algebraic shortcuts.

    Let (X, Y) be the attribute rows of the two endpoints of a random edge
    drawn from the adjacency, and (X', Y') an independent copy. With the
    centered distance

        c(x, x') = d(x, x') - a(x) - a(x') + D,

    where a(x) is the mean distance from x to an independent endpoint draw
    and D the mean distance between two such draws, the returned pair is

        dcov2_xy = sum over ordered pairs (i,j) and (i',j') of
                   A_ij A_i'j' c(x_i, x_i') c(x_j, x_j')
        dcov2_xx = sum over i and i' of k_i k_i' c(x_i, x_i')^2

    evaluated literally, at O(n^4) cost. Intended for n up to ~30 when used
    routinely; larger inputs work but take noticeably longer.
    """
    attrs = _as_matrix(attributes)
    if attrs.n != adjacency.n:
        raise ValueError("attribute rows must match node count")
    a = np.asarray(adjacency.matrix, dtype=np.float64)
    x = np.asarray(attrs.matrix, dtype=np.float64)
    n = a.shape[0]

    # all quantities below stay independent of the compiled kernels and of
    # the closed-form simplifications
    diff = x[:, None, :] - x[None, :, :]
    b = np.sqrt((diff * diff).sum(axis=2))
    np.fill_diagonal(b, 0.0)

    k = np.array([math.fsum(row) for row in a])
    amean = np.array([math.fsum(k * b[i]) for i in range(n)])
    dmean = math.fsum((k[:, None] * k[None, :] * b).ravel())

    c = b - amean[:, None] - amean[None, :] + dmean

    parts = []
    for i in range(n):
        for j in range(n):
            if a[i, j] == 0.0:
                continue
            inner = math.fsum((a * np.outer(c[i], c[j])).ravel())
            parts.append(a[i, j] * inner)
    dcov2_xy = math.fsum(parts)

    parts = []
    for i in range(n):
        for i2 in range(n):
            parts.append(k[i] * k[i2] * c[i, i2] * c[i, i2])
    dcov2_xx = math.fsum(parts)
    return dcov2_xy, dcov2_xx


def dcor_oracle(adjacency: NormalizedAdjacency, attributes) -> float:
    """Distance correlation of the edge endpoints from the definitional
    sums: sqrt(dcov2_xy / dcov2_xx). Since both endpoints of an undirected
    edge share one marginal distribution, the variance normalizer is the
    squared distance variance of that marginal.

    Slow on purpose (O(n^4)): this is the audit path for
    ``vector_assortativity``, kept free of the closed-form cancellations.
    """
    dcov2_xy, dcov2_xx = dcor_oracle_parts(adjacency, attributes)
    dcov2_xy = _clamp_nonneg(dcov2_xy, "definitional squared distance covariance")
    dcov2_xx = _clamp_nonneg(dcov2_xx, "definitional squared distance variance")
    if dcov2_xx == 0.0:
        raise DegenerateAttribute(
            "attribute distance variance is zero under the edge distribution"
        )
    if dcov2_xy == 0.0:
        return 0.0
    return math.sqrt(dcov2_xy / dcov2_xx)
