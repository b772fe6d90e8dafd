"""Graded Betti numbers, Cohen-Macaulay type and Hilbert-series checks.

The graded Betti number beta_{i,F} of the face ring equals the dimension of
the reduced homology of the restriction to F in degree #F - i - 1, summed
over nothing: one squarefree degree F contributes to one homological index
per homology degree.  The scan over all 2^n vertex subsets walks them in
Gray-code order and memoizes restricted face lists by bitmask; subsets whose
degree falls outside [-1, dim of the restriction] contribute nothing and
are skipped.

A restriction that is {empty face} only contributes via homology degree -1,
which accounts for pure powers of variables in the ideal; that convention
is what makes beta_{0,empty} = 1.

Set AGSTAR_THREADS > 1 to fan the subset scan over a thread pool; results
merge by commutative addition so output does not depend on scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from math import comb

import numpy as np

from .bitops import iter_bits, mask_to_face
from .complex_core import SimplicialComplex
from .homology import _boundary_array
from .linalg import FieldSpec, rank_dense

FULL_TABLE_UNIVERSE_CAP = 16


class UniverseCapError(RuntimeError):
    """A full 2^n subset scan was requested beyond the configured cap."""


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("AGSTAR_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class BettiTable:
    """Nonzero beta_{i,F} entries; F stored as a vertex bitmask."""

    n: int
    d: int
    field: FieldSpec
    entries: dict[tuple[int, int], int] = dataclass_field(default_factory=dict)

    def beta(self, i: int, face) -> int:
        mask = 0
        for v in face:
            mask |= 1 << (v - 1)
        return self.entries.get((i, mask), 0)

    def total(self, i: int) -> int:
        return sum(v for (j, _), v in self.entries.items() if j == i)

    def by_degree(self, i: int) -> dict[int, int]:
        """Sum of the column i by total degree #F."""
        out: dict[int, int] = {}
        for (j, mask), v in self.entries.items():
            if j == i:
                deg = mask.bit_count()
                out[deg] = out.get(deg, 0) + v
        return out

    def rows(self):
        """(i, face tuple, value) sorted by (i, mask); for rendering."""
        return [(i, mask_to_face(mask), v)
                for (i, mask), v in sorted(self.entries.items())]


@lru_cache(maxsize=1 << 14)
def _restricted_faces(delta: SimplicialComplex,
                      fmask: int) -> tuple[tuple[int, ...], ...]:
    """Faces of delta inside fmask, grouped by dimension starting at -1."""
    by_dim = [(0,)]
    for k in range(0, delta.dim + 1):
        layer = tuple(m for m in delta.face_masks_of_dim(k) if m & ~fmask == 0)
        if not layer:
            break
        by_dim.append(layer)
    return tuple(by_dim)


def _restricted_rank(delta: SimplicialComplex, fmask: int, j: int,
                     field: FieldSpec) -> int:
    """Rank of the restriction's boundary map in degree j (augmented)."""
    faces = _restricted_faces(delta, fmask)
    if j < 0 or j + 1 >= len(faces):
        return 0
    return rank_dense(_boundary_array(faces[j], faces[j + 1]), field)


def _restricted_homology_dim(delta: SimplicialComplex, fmask: int, j: int,
                             field: FieldSpec) -> int:
    faces = _restricted_faces(delta, fmask)
    top = len(faces) - 2
    if j < -1 or j > top:
        return 0
    c_j = len(faces[j + 1])
    return c_j - _restricted_rank(delta, fmask, j, field) \
        - _restricted_rank(delta, fmask, j + 1, field)


def _gray_codes(n: int):
    for t in range(1 << n):
        yield t ^ (t >> 1)


def betti_table(delta: SimplicialComplex, field: FieldSpec,
                universe_cap: int = FULL_TABLE_UNIVERSE_CAP) -> BettiTable:
    """Full graded Betti table of the face ring over the field."""
    if delta.dim < 0:
        raise ValueError("Betti table requires a complex of dimension >= 0")
    n = delta.n
    if n > universe_cap:
        raise UniverseCapError(
            f"full Betti scan over 2^{n} subsets exceeds the cap {universe_cap}")

    def scan(fmask: int) -> list[tuple[int, int, int]]:
        faces = _restricted_faces(delta, fmask)
        size = fmask.bit_count()
        out = []
        # ranks[j] = rank of the boundary map in degree j (0 past the top)
        ranks = [_restricted_rank(delta, fmask, j, field)
                 for j in range(len(faces))]
        for j in range(-1, len(faces) - 1):
            c_j = len(faces[j + 1])
            dim_h = c_j - (ranks[j] if j >= 0 else 0) - ranks[j + 1]
            if dim_h:
                out.append((size - j - 1, fmask, dim_h))
        return out

    subsets = list(_gray_codes(n))
    workers = thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(scan, subsets)
    else:
        chunks = map(scan, subsets)
    entries: dict[tuple[int, int], int] = {}
    for chunk in chunks:
        for i, fmask, v in chunk:
            entries[(i, fmask)] = entries.get((i, fmask), 0) + v
    return BettiTable(n, delta.dim + 1, field, entries)


def cm_type(delta: SimplicialComplex, field: FieldSpec) -> int:
    """dim of the last nonvanishing Tor column (homological index n - d).

    The value is defined for any complex; it equals the Cohen-Macaulay type
    exactly when the complex is CM over the field, which callers flag.
    """
    if delta.dim < 0:
        raise ValueError("type requires a complex of dimension >= 0")
    n, d = delta.n, delta.dim + 1
    i0 = n - d
    total = 0
    for fmask in _gray_codes(n):
        j = fmask.bit_count() - i0 - 1
        if j < -1:
            continue
        total += _restricted_homology_dim(delta, fmask, j, field)
    return total


def graded_type_column(delta: SimplicialComplex,
                       field: FieldSpec) -> dict[int, int]:
    """Total-degree breakdown of the type column: degree #F -> dimension."""
    if delta.dim < 0:
        raise ValueError("requires a complex of dimension >= 0")
    n, d = delta.n, delta.dim + 1
    i0 = n - d
    out = {deg: 0 for deg in range(max(i0, 0), n + 1)}
    for fmask in _gray_codes(n):
        j = fmask.bit_count() - i0 - 1
        if j < -1:
            continue
        v = _restricted_homology_dim(delta, fmask, j, field)
        if v:
            out[fmask.bit_count()] += v
    return out


def hilbert_numerator_check(delta: SimplicialComplex, field: FieldSpec,
                            universe_cap: int = FULL_TABLE_UNIVERSE_CAP) -> bool:
    """Alternating Betti polynomial against the transformed h-polynomial.

    Checks sum_{i,F} (-1)^i beta_{i,F} t^{#F} == (1-t)^{n-d} sum_k h_k t^k
    as exact integer polynomials; a False return indicates a bug somewhere,
    never a property of the input.
    """
    table = betti_table(delta, field, universe_cap=universe_cap)
    n, d = delta.n, delta.dim + 1
    lhs = [0] * (n + 1)
    for (i, fmask), v in table.entries.items():
        lhs[fmask.bit_count()] += (-1) ** i * v
    h = delta.h_vector()
    rhs = [0] * (n + 1)
    for k, hk in enumerate(h):
        for j in range(n - d + 1):
            rhs[k + j] += hk * comb(n - d, j) * (-1) ** j
    return lhs == rhs
