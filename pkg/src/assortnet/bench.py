"""Benchmark the compiled kernels against the pure-NumPy fallback.

Run as ``python -m assortnet.bench``. Prints per-kernel best-of-N wall
times for each available backend and the speedup of the compiled one.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ._kernels import available_backends


def _inputs(n: int, d: int = 4, cells: int = 80, seed: int = 0):
    rng = np.random.default_rng(seed)
    w = rng.random((n, n))
    w = np.ascontiguousarray((w + w.T) / 2.0)
    np.fill_diagonal(w, 0.0)
    p = rng.random((n, cells))
    p = np.ascontiguousarray(p / p.sum(axis=1, keepdims=True))
    x = np.ascontiguousarray(rng.random((n, d)))
    t = np.triu(w).sum()
    a = np.ascontiguousarray(np.where(np.eye(n, dtype=bool), w / t, w / (2 * t)))
    k = np.ascontiguousarray(a.sum(axis=1))
    b = rng.random((n, n))
    b = np.ascontiguousarray((b + b.T) / 2.0)
    np.fill_diagonal(b, 0.0)
    return {
        "tv_matrix": (p,),
        "euclidean_matrix": (x,),
        "normalize_edges": (w,),
        "row_sums": (a,),
        "scalar_terms": (a, k, np.ascontiguousarray(x[:, 0])),
        "f1_f2": (a, k, b),
    }


def _best_time(fn, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="20,50,100,200",
                        help="comma-separated node counts")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = available_backends()
    if "c" not in backends:
        print("compiled kernels not built; timing the python backend only")
    names = sorted(backends)

    header = f"{'kernel':<18} {'n':>5} " + " ".join(f"{b:>12}" for b in names)
    if len(names) == 2:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        inputs = _inputs(n)
        for kernel, kargs in inputs.items():
            times = {b: _best_time(getattr(backends[b], kernel), kargs, args.repeats)
                     for b in names}
            row = f"{kernel:<18} {n:>5} " + " ".join(f"{times[b]*1e3:>10.3f}ms" for b in names)
            if len(names) == 2:
                row += f" {times['python'] / times['c']:>8.1f}x"
            print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
