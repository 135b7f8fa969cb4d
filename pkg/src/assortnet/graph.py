"""Weighted undirected graphs as edge distributions.

The central object is the normalized adjacency matrix: raw similarity
weights rescaled so that the total over ordered node pairs is one. Each
ordered cell is then the probability that a randomly drawn directed
half-edge runs from its row node to its column node, which is what the
assortativity measures integrate against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import AllZeroWeights

_TOTAL_TOL = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class EdgeWeightMatrix:
    """Symmetric matrix of raw non-negative edge weights.

    The diagonal may be nonzero (self-loops are representable even though
    the occupational-network builder never produces them).
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("edge weights must form a square matrix")
        if not np.array_equal(w, w.T):
            raise ValueError("edge weight matrix must be symmetric")
        if not np.all(np.isfinite(w)):
            raise ValueError("edge weights must be finite")
        if np.any(w < 0.0):
            raise ValueError("edge weights must be non-negative")
        if not np.any(w > 0.0):
            raise AllZeroWeights("all edge weights are zero")
        object.__setattr__(self, "weights", _readonly(w))

    @property
    def n(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class NormalizedAdjacency:
    """Symmetric non-negative matrix whose ordered-pair total is one."""

    matrix: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if not np.array_equal(a, a.T):
            raise ValueError("normalized adjacency must be symmetric")
        if np.any(a < 0.0) or not np.all(np.isfinite(a)):
            raise ValueError("normalized adjacency entries must be finite and >= 0")
        total = _kernels.sum_all(a)
        if abs(total - 1.0) > _TOTAL_TOL:
            raise ValueError(
                f"ordered-pair total must be 1 within {_TOTAL_TOL}, got {total!r}"
            )
        object.__setattr__(self, "matrix", _readonly(a))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class NodeMarginals:
    """Row sums of a normalized adjacency: the probability that a random
    half-edge endpoint is each node. By symmetry these equal the column
    sums, bit for bit."""

    k: np.ndarray

    def __post_init__(self):
        k = np.asarray(self.k, dtype=np.float64)
        if k.ndim != 1:
            raise ValueError("marginals must be a vector")
        if np.any(k < 0.0) or not np.all(np.isfinite(k)):
            raise ValueError("marginals must be finite and >= 0")
        total = _kernels.sum_all(k)
        if abs(total - 1.0) > _TOTAL_TOL:
            raise ValueError(f"marginals must sum to 1 within {_TOTAL_TOL}, got {total!r}")
        object.__setattr__(self, "k", _readonly(k))


def normalize_adjacency(w: EdgeWeightMatrix) -> NormalizedAdjacency:
    """Turn raw weights into the edge distribution.

    Diagonal entries are divided by T, the weight total over unordered
    pairs (diagonal included); off-diagonal entries by 2T. The two ordered
    copies of an undirected edge then split its probability mass, and the
    ordered-pair total is exactly one up to rounding.
    """
    a, t = _kernels.normalize_edges(w.weights)
    if t <= 0.0:
        raise AllZeroWeights("total edge weight is zero")
    return NormalizedAdjacency(a)


def node_marginals(a: NormalizedAdjacency) -> NodeMarginals:
    """Marginal endpoint distribution: row sums of the adjacency."""
    return NodeMarginals(_kernels.row_sums(a.matrix))


def write_edge_list(
    path,
    w: EdgeWeightMatrix,
    a: NormalizedAdjacency,
    labels: Sequence[str] | None = None,
) -> None:
    """Write the nonzero unordered pairs as CSV.

    Columns are src,dst,weight,normalized_weight where normalized_weight is
    the adjacency matrix cell for the pair (for distinct endpoints that is
    the per-direction value w/(2T)). Floats carry 17 significant digits.
    """
    if labels is None:
        labels = [str(i) for i in range(w.n)]
    if len(labels) != w.n:
        raise ValueError("label count must match node count")
    if a.n != w.n:
        raise ValueError("weight and adjacency dimensions differ")
    wm, am = w.weights, a.matrix
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("src,dst,weight,normalized_weight\n")
        for i in range(w.n):
            for j in range(i, w.n):
                if wm[i, j] > 0.0:
                    fh.write(
                        f"{labels[i]},{labels[j]},{wm[i, j]:.17g},{am[i, j]:.17g}\n"
                    )
