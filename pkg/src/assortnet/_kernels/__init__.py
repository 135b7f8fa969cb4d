"""Numerical kernel dispatch.

Two interchangeable backends implement the hot inner loops: a Cython
extension (``_ckernels``) and a pure-NumPy fallback (``_pykernels``). The
compiled one is used when built; set ASSORTNET_BACKEND=python or
ASSORTNET_BACKEND=c to force a choice at import time.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built; fallback only
    _ckernels = None


def _select():
    forced = os.environ.get("ASSORTNET_BACKEND")
    if forced is None or forced == "":
        return _ckernels if _ckernels is not None else _pykernels
    if forced == "python":
        return _pykernels
    if forced == "c":
        if _ckernels is None:
            raise ImportError(
                "ASSORTNET_BACKEND=c but the compiled kernels are not built"
            )
        return _ckernels
    raise ValueError(f"unknown ASSORTNET_BACKEND value: {forced!r}")


_impl = _select()


def backend_name() -> str:
    """Name of the active backend: 'c' or 'python'."""
    return "c" if _impl is _ckernels else "python"


def available_backends() -> dict:
    """Importable backend modules, keyed by name."""
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["c"] = _ckernels
    return out


def _c2(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


def _c1(a) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(a, dtype=np.float64).ravel())


def sum_all(a) -> float:
    return _impl.sum_all(_c1(a))


def row_sums(a) -> np.ndarray:
    return _impl.row_sums(_c2(a))


def tv_matrix(p) -> np.ndarray:
    return _impl.tv_matrix(_c2(p))


def euclidean_matrix(x) -> np.ndarray:
    return _impl.euclidean_matrix(_c2(x))


def normalize_edges(w) -> tuple[np.ndarray, float]:
    return _impl.normalize_edges(_c2(w))


def scalar_terms(a, k, x) -> tuple[float, float, float]:
    return _impl.scalar_terms(_c2(a), _c1(k), _c1(x))


def f1_f2(a, k, b) -> tuple[float, float]:
    return _impl.f1_f2(_c2(a), _c1(k), _c2(b))
