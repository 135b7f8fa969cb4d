"""Shared generators for randomized tests."""

from __future__ import annotations

import numpy as np

from assortnet import EdgeWeightMatrix, NormalizedAdjacency, normalize_adjacency


def random_weights(rng, n: int, allow_self_loops: bool = True,
                   sparsity: float = 0.0) -> EdgeWeightMatrix:
    """Random symmetric non-negative weights; occasionally with self-loops
    and zeroed pairs (including possibly isolated nodes)."""
    w = rng.random((n, n))
    w = (w + w.T) / 2.0
    if sparsity > 0.0:
        keep = rng.random((n, n)) >= sparsity
        keep = keep & keep.T
        w = w * keep
    np.fill_diagonal(w, 0.0)
    if allow_self_loops and rng.random() < 0.3:
        loops = rng.random(n) * (rng.random(n) < 0.5)
        w = w + np.diag(loops)
    if not np.any(w > 0.0):
        w[0, 1] = w[1, 0] = 1.0  # keep the instance non-degenerate
    return EdgeWeightMatrix(w)


def random_attributes(rng, n: int, d: int) -> np.ndarray:
    """Random attribute rows in a few flavors, including discrete values
    that create exact ties between rows."""
    flavor = rng.integers(0, 3)
    if flavor == 0:
        return rng.random((n, d))
    if flavor == 1:
        return rng.normal(size=(n, d))
    return rng.integers(0, 3, size=(n, d)).astype(float)


def random_instance(rng, n: int | None = None, d: int | None = None
                    ) -> tuple[NormalizedAdjacency, np.ndarray]:
    n = int(rng.integers(2, 13)) if n is None else n
    d = int(rng.integers(1, 5)) if d is None else d
    w = random_weights(rng, n, sparsity=float(rng.random() < 0.4) * 0.3)
    a = normalize_adjacency(w)
    return a, random_attributes(rng, n, d)
