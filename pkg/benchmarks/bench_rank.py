#!/usr/bin/env python3
"""Benchmark the compiled elimination kernels against the pure-Python ones.

The rank kernels sit under every homology dimension, so they dominate
classification and search time.  This script times both backends on the
boundary matrices that actually occur (sphere / projective-plane / search
workloads) and on batches of random sparse matrices, then times one
end-to-end classification under the in-process backend.

Run:  python benchmarks/bench_rank.py
"""

from __future__ import annotations

import random
import time

import numpy as np

from agstar import QQ, GF2, SimplicialComplex
from agstar.classify import classify
from agstar.homology import _boundary_array
from agstar.linalg import KERNEL_BACKEND, _elim_py

try:
    from agstar.linalg import _elim as _compiled
except ImportError:
    _compiled = None

S = SimplicialComplex.from_facets

SIGMA = S(6, [(1, 3, 4), (1, 2, 5), (2, 3, 5), (3, 4, 5), (1, 2, 6),
              (1, 3, 6), (2, 3, 6), (1, 4, 6), (1, 5, 6), (4, 5, 6)])
RP2 = S(6, [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
            (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)])
OCTA = S(6, [(1, 2, 3), (1, 2, 4), (1, 5, 3), (1, 5, 4),
             (6, 2, 3), (6, 2, 4), (6, 5, 3), (6, 5, 4)])


def boundary(sc, k):
    return _boundary_array(sc.face_masks_of_dim(k - 1), sc.face_masks_of_dim(k))


def random_batch(count, shape, density, seed):
    rng = random.Random(seed)
    rows, cols = shape
    out = []
    for _ in range(count):
        mat = np.zeros(shape, dtype=np.int64)
        for r in range(rows):
            for c in range(cols):
                if rng.random() < density:
                    mat[r, c] = rng.choice((-1, 1))
        out.append(mat)
    return out


def time_backend(matrices, p, repeats=200):
    """Seconds per rank call for (compiled or None, python) backends."""

    def run_compiled():
        for m in matrices:
            arr = m.copy()
            if p:
                _compiled.rank_mod_p(arr, p)
            else:
                _compiled.rank_bareiss(arr)

    def run_python():
        for m in matrices:
            rows = m.tolist()
            if p:
                _elim_py.rank_mod_p(rows, p)
            else:
                _elim_py.rank_over_q(rows)

    results = {}
    if _compiled is not None:
        start = time.perf_counter()
        for _ in range(repeats):
            run_compiled()
        results["compiled"] = (time.perf_counter() - start) / (repeats * len(matrices))
    start = time.perf_counter()
    py_repeats = max(1, repeats // 10)
    for _ in range(py_repeats):
        run_python()
    results["python"] = (time.perf_counter() - start) / (py_repeats * len(matrices))
    return results


def fmt(seconds):
    return f"{seconds * 1e6:9.1f} us"


def main():
    print(f"active package backend: {KERNEL_BACKEND}")
    print(f"{'workload':44s} {'compiled':>12s} {'python':>12s} {'speedup':>8s}")
    workloads = [
        ("sigma d2 boundary (14x10), rank over QQ", [boundary(SIGMA, 2)], 0),
        ("sigma d2 boundary (14x10), rank mod 2", [boundary(SIGMA, 2)], 2),
        ("octahedron d2 boundary (12x8), rank over QQ", [boundary(OCTA, 2)], 0),
        ("projective plane d2 (15x10), rank mod 2", [boundary(RP2, 2)], 2),
        ("random 15x20 density 0.15 (x20), over QQ",
         random_batch(20, (15, 20), 0.15, 7), 0),
        ("random 15x20 density 0.15 (x20), mod 3",
         random_batch(20, (15, 20), 0.15, 7), 3),
        ("random 30x30 density 0.10 (x10), over QQ",
         random_batch(10, (30, 30), 0.10, 11), 0),
    ]
    for name, mats, p in workloads:
        res = time_backend(mats, p)
        comp = res.get("compiled")
        pyt = res["python"]
        speedup = f"{pyt / comp:7.1f}x" if comp else "     n/a"
        print(f"{name:44s} {fmt(comp) if comp else '   (absent)':>12s} "
              f"{fmt(pyt):>12s} {speedup:>8s}")

    start = time.perf_counter()
    for _ in range(20):
        classify(SIGMA, QQ)
        classify(RP2, GF2)
    per = (time.perf_counter() - start) / 40
    print(f"\nend-to-end classify() under the {KERNEL_BACKEND} backend: "
          f"{per * 1e3:.2f} ms per complex")
    print("rerun with AGSTAR_PURE_PYTHON=1 to time the fallback end to end")


if __name__ == "__main__":
    main()
