"""Exact rank computation over the rationals and prime fields.

Everything here is exact: rational-characteristic work uses fraction-free
integer elimination (arbitrary precision in the fallback, 64/128-bit words
with overflow detection in the compiled kernel), prime fields use modular
arithmetic.  A compiled Cython kernel is preferred and a pure-Python kernel
with the same contract is selected at import when the extension is missing;
`KERNEL_BACKEND` records which one is live.

Homology dimensions over any infinite field of characteristic p equal those
over F_p, so F_p serves as the computational proxy for characteristic p and
the rationals for characteristic 0.  Reports carry the characteristic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _elim_py

if os.environ.get("AGSTAR_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _elim as _compiled
    except ImportError:  # pragma: no cover - build-dependent
        _compiled = None

KERNEL_BACKEND = "compiled" if _compiled is not None else "python"

_WORD_LIMIT = 1 << 62
_MAX_COMPILED_PRIME = 1 << 31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin, valid far beyond 64-bit inputs
    d = p - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(base, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic 0 (rationals) or a prime p (F_p)."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic == 0:
            return
        if not _is_prime(self.characteristic):
            raise ValueError(f"{self.characteristic} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime_field(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def is_rationals(self) -> bool:
        return self.characteristic == 0

    def __str__(self):
        return "QQ" if self.is_rationals else f"GF({self.characteristic})"


QQ = FieldSpec.rationals()
GF2 = FieldSpec.prime_field(2)


class SparseMatrix:
    """Immutable integer matrix stored as {(row, col): nonzero value}."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], int]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        clean: dict[tuple[int, int], int] = {}
        for (r, c), v in entries.items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry index ({r}, {c}) out of range")
            v = int(v)
            if v:
                clean[(r, c)] = v
        self.rows = rows
        self.cols = cols
        self._entries = clean

    @property
    def entries(self) -> Mapping[tuple[int, int], int]:
        return MappingProxyType(self._entries)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    @classmethod
    def from_dense(cls, dense: Iterable[Sequence[int]]) -> "SparseMatrix":
        rows = [list(r) for r in dense]
        cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        entries = {(i, j): v for i, row in enumerate(rows)
                   for j, v in enumerate(row) if v}
        return cls(len(rows), cols, entries)

    def to_dense_rows(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self._entries.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        acc: dict[tuple[int, int], int] = {}
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in other._entries.items():
            by_row.setdefault(r, []).append((c, v))
        for (r, k), v in self._entries.items():
            for c, w in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._entries) == \
            (other.rows, other.cols, other._entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def _shape(rows) -> tuple[int, int]:
    if isinstance(rows, np.ndarray):
        return rows.shape[0], rows.shape[1]
    m = len(rows)
    return m, (len(rows[0]) if m else 0)


def _to_word_array(rows):
    """int64 copy of the input, or None when entries exceed word range."""
    try:
        arr = np.array(rows, dtype=np.int64)
    except OverflowError:
        return None
    if arr.size and int(np.abs(arr).max()) > _WORD_LIMIT:
        return None
    return arr


def _to_lists(rows) -> list[list[int]]:
    if isinstance(rows, np.ndarray):
        return rows.tolist()
    return [list(map(int, r)) for r in rows]


def rank_dense(rows, field: FieldSpec) -> int:
    """Exact rank of a dense array-like; the workhorse under homology."""
    m, n = _shape(rows)
    if m == 0 or n == 0:
        return 0
    p = field.characteristic
    if _compiled is not None and (p == 0 or p < _MAX_COMPILED_PRIME):
        arr = _to_word_array(rows)
        if arr is not None:
            if p:
                return _compiled.rank_mod_p(arr, p)
            r = _compiled.rank_bareiss(arr)
            if r >= 0:
                return r
    lists = _to_lists(rows)
    if p:
        return _elim_py.rank_mod_p(lists, p)
    return _elim_py.rank_over_q(lists)


def rank_profile_dense(rows, field: FieldSpec) -> tuple[int, tuple[int, ...]]:
    m, n = _shape(rows)
    if m == 0 or n == 0:
        return 0, ()
    p = field.characteristic
    if _compiled is not None and (p == 0 or p < _MAX_COMPILED_PRIME):
        arr = _to_word_array(rows)
        if arr is not None:
            if p:
                return _compiled.rank_profile_mod_p(arr, p)
            result = _compiled.rank_profile_bareiss(arr)
            if result is not None:
                return result
    lists = _to_lists(rows)
    if p:
        return _elim_py.rank_profile_mod_p(lists, n, p)
    return _elim_py.rank_profile_over_q(lists, n)


def rank(matrix: SparseMatrix, field: FieldSpec) -> int:
    """Exact rank of `matrix` over the field; deterministic."""
    return rank_dense(matrix.to_dense_rows(), field)


def rank_profile(matrix: SparseMatrix,
                 field: FieldSpec) -> tuple[int, tuple[int, ...]]:
    """Rank plus the lexicographically first pivot-column set."""
    return rank_profile_dense(matrix.to_dense_rows(), field)
