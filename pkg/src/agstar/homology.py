"""Simplicial homology dimensions over an exact coefficient field.

Only dimensions are ever needed, so homology in degree k is computed from
two boundary-matrix ranks: dim H_k = dim C_k - rank d_k - rank d_{k+1}.
Chain bases are faces ordered by ascending bitmask, which makes every
matrix, rank and pivot profile reproducible.  The absolute chain complex is
augmented (the empty face spans C_{-1}), so reduced homology falls out of
the same formula and H~_{-1}({empty complex}) = 1 without special cases.

Orientation signs follow the standard rule: dropping the i-th smallest
vertex of a face contributes (-1)^i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitops import face_to_mask, iter_bits
from .complex_core import SimplicialComplex
from .linalg import FieldSpec, SparseMatrix, rank_dense


@dataclass(frozen=True)
class ChainComplex:
    """Per-degree chain dimensions and boundary maps d_k : C_k -> C_{k-1}."""

    dims: dict[int, int]
    boundaries: dict[int, SparseMatrix]

    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def validate(self) -> bool:
        """Check d_k composed with d_{k+1} is the zero map, all degrees."""
        for k, mat in self.boundaries.items():
            upper = self.boundaries.get(k + 1)
            if upper is not None and not (mat @ upper).is_zero():
                return False
        return True


def _boundary_array(lower: tuple[int, ...], upper: tuple[int, ...]) -> np.ndarray:
    """Signed incidence matrix from the faces `upper` down to `lower`."""
    index = {m: i for i, m in enumerate(lower)}
    out = np.zeros((len(lower), len(upper)), dtype=np.int64)
    for j, face in enumerate(upper):
        for i, b in enumerate(iter_bits(face)):
            out[index[face ^ (1 << b)], j] = -1 if i % 2 else 1
    return out


def boundary_matrix(delta: SimplicialComplex, k: int) -> SparseMatrix:
    """The augmented boundary map from k-faces to (k-1)-faces."""
    if k < 0:
        raise ValueError("boundary matrices start at degree 0")
    lower = delta.face_masks_of_dim(k - 1)
    upper = delta.face_masks_of_dim(k)
    return SparseMatrix.from_dense(_boundary_array(lower, upper))


def chain_complex(delta: SimplicialComplex) -> ChainComplex:
    dims = {k: len(delta.face_masks_of_dim(k)) for k in range(-1, delta.dim + 1)}
    boundaries = {k: boundary_matrix(delta, k) for k in range(0, delta.dim + 1)}
    return ChainComplex(dims, boundaries)


def relative_chain_complex(delta: SimplicialComplex,
                           gamma: SimplicialComplex) -> ChainComplex:
    """Quotient complex of the pair: chains on faces of delta not in gamma."""
    _require_subcomplex(delta, gamma)
    kept = {k: tuple(m for m in delta.face_masks_of_dim(k)
                     if not gamma.contains_mask(m))
            for k in range(0, delta.dim + 1)}
    dims = {k: len(v) for k, v in kept.items()}
    boundaries: dict[int, SparseMatrix] = {}
    for k in range(0, delta.dim + 1):
        lower = kept.get(k - 1, ())
        index = {m: i for i, m in enumerate(lower)}
        arr = np.zeros((len(lower), len(kept[k])), dtype=np.int64)
        for j, face in enumerate(kept[k]):
            for i, b in enumerate(iter_bits(face)):
                row = index.get(face ^ (1 << b))
                if row is not None:
                    arr[row, j] = -1 if i % 2 else 1
        boundaries[k] = SparseMatrix.from_dense(arr)
    return ChainComplex(dims, boundaries)


def _require_subcomplex(delta: SimplicialComplex, gamma: SimplicialComplex):
    for facet in gamma.facet_masks:
        if not delta.contains_mask(facet):
            raise ValueError("second complex is not a subcomplex of the first")


def _boundary_rank(delta: SimplicialComplex, k: int, field: FieldSpec) -> int:
    if k < 0 or k > delta.dim:
        return 0
    return rank_dense(
        _boundary_array(delta.face_masks_of_dim(k - 1),
                        delta.face_masks_of_dim(k)),
        field)


def reduced_homology_dim(delta: SimplicialComplex, k: int,
                         field: FieldSpec) -> int:
    """dim of the k-th reduced homology of `delta` over the field."""
    if k < -1 or k > delta.dim:
        return 0
    c_k = len(delta.face_masks_of_dim(k))
    return c_k - _boundary_rank(delta, k, field) \
        - _boundary_rank(delta, k + 1, field)


def reduced_homology_dims(delta: SimplicialComplex,
                          field: FieldSpec) -> dict[int, int]:
    """All reduced homology dimensions, each boundary rank computed once."""
    top = delta.dim
    ranks = {k: _boundary_rank(delta, k, field) for k in range(0, top + 1)}
    ranks[-1] = 0
    ranks[top + 1] = 0
    return {k: len(delta.face_masks_of_dim(k)) - ranks[k] - ranks[k + 1]
            for k in range(-1, top + 1)}


def relative_homology_dim(delta: SimplicialComplex, gamma: SimplicialComplex,
                          k: int, field: FieldSpec) -> int:
    """dim H_k of the pair (delta, gamma) via the quotient chain complex."""
    if k < 0 or k > delta.dim:
        if k == -1:
            return 0
        if k < -1:
            raise ValueError("relative homology degree must be >= 0")
        return 0
    cc = relative_chain_complex(delta, gamma)
    ranks = {}
    for j in (k, k + 1):
        mat = cc.boundaries.get(j)
        ranks[j] = rank_dense(mat.to_dense_rows(), field) if mat is not None else 0
    return cc.dims.get(k, 0) - ranks[k] - ranks[k + 1]


def contrastar_map_rank(delta: SimplicialComplex, face, field: FieldSpec) -> int:
    """Rank of the top-homology map into the pair with the contrastar.

    Computed from the long exact sequence of the pair, where the leading
    segment 0 -> H_top(contrastar) -> H_top(delta) is exact:
    the rank equals dim H_top(delta) - dim H_top(contrastar).
    """
    mask = face_to_mask(face)
    if mask == 0:
        raise ValueError("the empty face has no contrastar")
    if delta.dim < 1:
        raise ValueError("requires a complex of dimension >= 1")
    if not delta.contains_mask(mask):
        raise ValueError(f"face {tuple(sorted(face))} not in the complex")
    top = delta.dim
    return reduced_homology_dim(delta, top, field) \
        - reduced_homology_dim(delta.contrastar(face), top, field)
