"""Ridge-sum detection and decomposition into indecomposable pieces.

A pure (d-1)-complex splits along a ridge W (a (d-2)-face) when removing
the vertices of W disconnects the restriction of the complex to the other
vertices; the two pieces are the restrictions to each side together with W
and they intersect exactly in the full simplex on W.  For almost
Gorenstein* input, repeatedly splitting terminates in pieces whose top
homology is one-dimensional, each itself almost Gorenstein*, and the leaf
count equals the top h-vector entry of the root.

Complexes produced by splitting stay on the parent's vertex universe so
that unions and reassembly checks are literal set operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Union

from .bitops import iter_bits, mask_to_face, universe_mask
from .classify import (
    delta_invariant,
    is_almost_gorenstein_star,
    is_cm,
    is_uniformly_cm,
)
from .betti import cm_type
from .complex_core import SimplicialComplex
from .homology import reduced_homology_dim
from .linalg import FieldSpec


class NotAlmostGorensteinStarError(ValueError):
    """Decomposition requested for a complex that is not almost Gorenstein*."""


class RidgeSplitError(RuntimeError):
    """A split candidate failed verification, or a guaranteed split is missing."""


@dataclass(frozen=True)
class Leaf:
    complex: SimplicialComplex


@dataclass(frozen=True)
class Split:
    ridge: tuple[int, ...]
    left: "RidgeDecomposition"
    right: "RidgeDecomposition"


RidgeDecomposition = Union[Leaf, Split]


def leaves(tree: RidgeDecomposition) -> Iterator[SimplicialComplex]:
    if isinstance(tree, Leaf):
        yield tree.complex
    else:
        yield from leaves(tree.left)
        yield from leaves(tree.right)


def _components_avoiding(delta: SimplicialComplex, wmask: int) -> list[int]:
    """Vertex masks of the components of the restriction away from wmask."""
    comps: list[int] = []
    for f in delta.facet_masks:
        piece = f & ~wmask
        if piece == 0:
            continue
        touching = [c for c in comps if c & piece]
        merged = piece
        for c in touching:
            merged |= c
            comps.remove(c)
        comps.append(merged)
    return comps


def find_ridge_split(delta: SimplicialComplex):
    """First ridge W whose removal disconnects the rest, with the two sides.

    Candidates are the (d-2)-faces of the complex in ascending bitmask
    order; the returned left side contains the smallest disconnected
    vertex.  Returns None when no ridge disconnects.  Raises
    RidgeSplitError if a detected split fails its union/dimension
    verification, which signals pathological (non-CM) input.
    """
    if delta.dim < 1:
        raise ValueError("ridge splits need dimension >= 1")
    if not delta.is_pure():
        raise ValueError("ridge splits are defined for pure complexes")
    if not delta.is_strongly_connected():
        raise ValueError("ridge splits assume a strongly connected complex")
    d = delta.dim + 1
    for wmask in delta.face_masks_of_dim(d - 2):
        comps = _components_avoiding(delta, wmask)
        if len(comps) < 2:
            continue
        side = min(comps, key=lambda c: c & -c)
        rest = 0
        for c in comps:
            if c != side:
                rest |= c
        gamma = delta.subcomplex_within(mask_to_face(side | wmask))
        sigma = delta.subcomplex_within(mask_to_face(rest | wmask))
        union = gamma.facet_masks | sigma.facet_masks
        if union != delta.facet_masks or gamma.dim != delta.dim \
                or sigma.dim != delta.dim:
            raise RidgeSplitError(
                f"split at ridge {mask_to_face(wmask)} failed verification")
        return mask_to_face(wmask), gamma, sigma
    return None


def split_indicator(delta: SimplicialComplex) -> int:
    """Connectivity count triggering splits: sum over all vertex subsets F
    with #F = n-d+1 of dim H~_0 of the restriction to F.

    Positive exactly when some (d-1)-set of vertices disconnects the rest,
    a cheap pretest equivalent to the relevant squarefree Tor component
    being nonzero; it avoids any type computation.
    """
    if delta.dim < 0:
        raise ValueError("requires a complex of dimension >= 0")
    n, d = delta.n, delta.dim + 1
    size = n - d + 1
    if size < 0:
        return 0
    total = 0
    for fverts in combinations(range(n), size):
        fmask = 0
        for b in fverts:
            fmask |= 1 << b
        comps = _components_avoiding(delta, ~fmask & universe_mask(n))
        if comps:
            total += len(comps) - 1
    return total


def decompose(delta: SimplicialComplex, field: FieldSpec,
              verify_input: bool = True) -> RidgeDecomposition:
    """Split an almost Gorenstein* complex down to indecomposable leaves."""
    if verify_input and not is_almost_gorenstein_star(delta, field):
        raise NotAlmostGorensteinStarError(
            "decomposition is defined for almost Gorenstein* complexes only")
    return _decompose_rec(delta, field)


def _decompose_rec(delta: SimplicialComplex, field: FieldSpec) -> RidgeDecomposition:
    if reduced_homology_dim(delta, delta.dim, field) == 1:
        return Leaf(delta)
    found = find_ridge_split(delta)
    if found is None:
        raise RidgeSplitError(
            "no ridge split although top homology has dimension > 1; "
            "the input cannot be almost Gorenstein*")
    ridge, gamma, sigma = found
    return Split(ridge, _decompose_rec(gamma, field), _decompose_rec(sigma, field))


def reassemble(tree: RidgeDecomposition) -> SimplicialComplex:
    """Union the tree back together, checking each node is a ridge sum."""
    if isinstance(tree, Leaf):
        return tree.complex
    left = reassemble(tree.left)
    right = reassemble(tree.right)
    out = SimplicialComplex._from_masks(left.n,
                                        left.facet_masks | right.facet_masks)
    _check_is_ridge_sum(left, right, out)
    return out


def _check_is_ridge_sum(gamma: SimplicialComplex, sigma: SimplicialComplex,
                        glued: SimplicialComplex):
    """Verify glued = gamma union sigma intersecting in a full ridge simplex."""
    d = glued.dim + 1
    if gamma.dim != glued.dim or sigma.dim != glued.dim:
        raise ValueError("ridge sum parts must share the glued dimension")
    if gamma.facet_masks | sigma.facet_masks != glued.facet_masks:
        raise ValueError("parts do not union to the glued complex")
    shared = gamma.vertex_mask & sigma.vertex_mask
    if shared.bit_count() != d - 1:
        raise ValueError("parts must share exactly d-1 vertices")
    if not (gamma.contains_mask(shared) and sigma.contains_mask(shared)):
        raise ValueError("shared vertices are not a face of both parts")
    # no face outside <W> may lie in both sides
    for k in range(0, glued.dim + 1):
        for f in gamma.face_masks_of_dim(k):
            if f & ~shared and sigma.contains_mask(f):
                raise ValueError("parts intersect beyond the shared ridge")


@dataclass(frozen=True)
class RidgeIdentityReport:
    """Per-item outcome of the ridge-sum identity checks.

    Numeric items (h-vector, delta, type additivity) pass when the exact
    identity holds.  Property items (CM, uniformly CM, almost Gorenstein*)
    pass when the property holds for the glued complex and both parts; the
    matching *_consistent fields record whether glued status equals the
    conjunction of the part statuses, which is a theorem and so a failure
    there indicates a bug.  type_additivity is None when a part is a
    simplex or the glued complex is not CM.
    """

    h_additivity: bool
    delta_additivity: bool
    cm_transfer: bool
    cm_consistent: bool
    uniformly_cm_transfer: bool
    uniformly_cm_consistent: bool
    type_additivity: bool | None
    ag_star_transfer: bool
    ag_star_consistent: bool

    def items(self) -> dict[str, bool | None]:
        return {
            "i": self.h_additivity,
            "ii": self.delta_additivity,
            "iii": self.cm_transfer,
            "iv": self.uniformly_cm_transfer,
            "v": self.type_additivity,
            "vi": self.ag_star_transfer,
        }

    def consistent(self) -> bool:
        return (self.h_additivity and self.delta_additivity
                and self.cm_consistent and self.uniformly_cm_consistent
                and self.type_additivity is not False
                and self.ag_star_consistent)


def verify_ridge_identities(gamma: SimplicialComplex, sigma: SimplicialComplex,
                            glued: SimplicialComplex,
                            field: FieldSpec) -> RidgeIdentityReport:
    """Check the six ridge-sum identities on an actual gluing."""
    _check_is_ridge_sum(gamma, sigma, glued)
    h_glued = list(glued.h_vector())
    h_parts = [hg + hs for hg, hs in zip(gamma.h_vector(), sigma.h_vector())]
    h_parts[0] -= 1
    h_parts[1] += 1
    h_ok = h_glued == h_parts

    d_glued = delta_invariant(glued.h_vector())
    d_ok = d_glued == (delta_invariant(gamma.h_vector())
                       + delta_invariant(sigma.h_vector()) + 2)

    cm_g, cm_a, cm_b = (is_cm(c, field) for c in (glued, gamma, sigma))
    ucm_g, ucm_a, ucm_b = (is_uniformly_cm(c, field)
                           for c in (glued, gamma, sigma))
    ag_g, ag_a, ag_b = (is_almost_gorenstein_star(c, field)
                        for c in (glued, gamma, sigma))

    type_ok: bool | None = None
    is_simplex = (len(gamma.facet_masks) == 1, len(sigma.facet_masks) == 1)
    if cm_g and not any(is_simplex):
        type_ok = cm_type(glued, field) == \
            cm_type(gamma, field) + cm_type(sigma, field) + 1

    return RidgeIdentityReport(
        h_additivity=h_ok,
        delta_additivity=d_ok,
        cm_transfer=cm_g and cm_a and cm_b,
        cm_consistent=cm_g == (cm_a and cm_b),
        uniformly_cm_transfer=ucm_g and ucm_a and ucm_b,
        uniformly_cm_consistent=ucm_g == (ucm_a and ucm_b),
        type_additivity=type_ok,
        ag_star_transfer=ag_g and ag_a and ag_b,
        ag_star_consistent=ag_g == (ag_a and ag_b),
    )
