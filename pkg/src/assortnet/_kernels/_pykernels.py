"""NumPy implementations of the numerical kernels.

This is the fallback backend, selected when the compiled extension is not
built (or when forced via ASSORTNET_BACKEND=python). Scalar reductions that
feed tolerance-sensitive invariants go through math.fsum, which returns the
correctly rounded sum regardless of operand order.
"""

from __future__ import annotations

import math

import numpy as np


def sum_all(a: np.ndarray) -> float:
    """Error-free sum of all entries."""
    return math.fsum(a.ravel())


def row_sums(a: np.ndarray) -> np.ndarray:
    """Per-row sums, each computed with fsum."""
    return np.array([math.fsum(row) for row in a], dtype=np.float64)


def tv_matrix(p: np.ndarray) -> np.ndarray:
    """Pairwise total variation distances between the distribution rows of
    ``p`` (each row sums to one): 0.5 * sum |p_i - p_j| per pair."""
    d = 0.5 * np.abs(p[:, None, :] - p[None, :, :]).sum(axis=2)
    np.fill_diagonal(d, 0.0)
    return d


def euclidean_matrix(x: np.ndarray) -> np.ndarray:
    """Pairwise Euclidean distances between the rows of ``x``."""
    diff = x[:, None, :] - x[None, :, :]
    b = np.sqrt((diff * diff).sum(axis=2))
    np.fill_diagonal(b, 0.0)
    return b


def normalize_edges(w: np.ndarray) -> tuple[np.ndarray, float]:
    """Rescale a symmetric weight matrix so its ordered-pair total is one.

    Diagonal entries are divided by the total weight T over unordered pairs
    (diagonal included); off-diagonal entries by 2T, since each unordered
    edge appears in two ordered cells. Returns (A, T); the caller decides
    what a non-positive T means.
    """
    n = w.shape[0]
    t = math.fsum(w[np.triu_indices(n)])
    if t <= 0.0:
        return np.zeros_like(w), t
    a = w / (2.0 * t)
    np.fill_diagonal(a, w.diagonal() / t)
    return a, t


def scalar_terms(a: np.ndarray, k: np.ndarray, x: np.ndarray) -> tuple[float, float, float]:
    """Weighted mean, covariance and variance of a scalar attribute under
    the edge distribution ``a`` with marginals ``k``."""
    xbar = math.fsum(k * x)
    c = x - xbar
    cov = math.fsum((a * np.outer(c, c)).ravel())
    var = math.fsum(k * c * c)
    return xbar, cov, var


def f1_f2(a: np.ndarray, k: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    """Numerator and denominator of the squared distance correlation of the
    edge-endpoint attributes, in closed form.

    The quadruple sum over ordered pair pairs is evaluated as the entrywise
    inner product <A, B.A.B> after two matrix products, which keeps the cost
    at O(n^3) instead of the O(n^4) of the definitional sum.
    """
    m = b @ a @ b
    s1 = math.fsum((a * m).ravel())
    rowavg = b @ k
    s2 = math.fsum((a * np.outer(rowavg, rowavg)).ravel())
    dmean = math.fsum(k * rowavg)
    s3 = math.fsum(((k[:, None] * k[None, :]) * b * b).ravel())
    s4 = math.fsum(k * rowavg * rowavg)
    f1 = s1 - 2.0 * s2 + dmean * dmean
    f2 = s3 - 2.0 * s4 + dmean * dmean
    return f1, f2
