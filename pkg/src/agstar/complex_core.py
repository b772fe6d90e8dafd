"""Immutable simplicial complexes and their combinatorial constructions.

A complex lives on the vertex universe {1, ..., n} and is determined by its
facets (inclusion-maximal faces).  Faces are exposed as sorted vertex tuples
and stored as bitmasks; every query reduces to O(1) subset tests on masks.
The minimal representable complex is {"empty face only"}, written {∅} below;
a truly void complex (no faces at all) is not representable.

Vertex universes are capped at 64 so that masks stay within a machine word
in the compiled kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .bitops import (
    face_to_mask,
    is_subset,
    iter_bits,
    mask_to_face,
    subfaces_of_size,
    universe_mask,
)

MAX_VERTICES = 64

FaceInput = Iterable[int]


@dataclass(frozen=True)
class FVector:
    """Face counts (f_{-1}, f_0, ..., f_{d-1}) with f_{-1} = 1."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if not self.entries or self.entries[0] != 1:
            raise ValueError("f-vector must start with f_{-1} = 1")
        if any(e < 0 for e in self.entries):
            raise ValueError("face counts must be nonnegative")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


@dataclass(frozen=True)
class HVector:
    """Entries (h_0, ..., h_d); negative values are legal for non-CM input."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if not self.entries or self.entries[0] != 1:
            raise ValueError("h-vector must start with h_0 = 1")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def d(self) -> int:
        return len(self.entries) - 1


class SimplicialComplex:
    """A simplicial complex given by its facet antichain on {1, ..., n}.

    Instances are immutable and hashable; all operations return new objects.
    `labels` optionally records original vertex names after a re-hosting
    restriction (labels[i] is the original name of vertex i+1) and is
    metadata only: it does not take part in equality.
    """

    def __init__(self, n: int, facet_masks: frozenset[int],
                 labels: tuple[int, ...] | None = None):
        self.n = n
        self.facet_masks = facet_masks
        self.labels = labels

    # -- construction ---------------------------------------------------

    @classmethod
    def from_facets(cls, n: int, faces: Iterable[FaceInput]) -> "SimplicialComplex":
        """Build a complex from generating faces, keeping only maximal ones.

        Non-maximal or duplicate generators are silently dropped (the CLI
        reports when that happened).  An empty generating family yields {∅}.
        """
        if n < 1:
            raise ValueError(f"vertex universe size must be >= 1, got {n}")
        if n > MAX_VERTICES:
            raise ValueError(f"vertex universe size {n} exceeds {MAX_VERTICES}")
        masks = []
        for face in faces:
            mask = face_to_mask(face)
            if mask & ~universe_mask(n):
                bad = max(mask_to_face(mask))
                raise ValueError(f"vertex {bad} outside universe [1, {n}]")
            masks.append(mask)
        return cls._from_masks(n, masks)

    @classmethod
    def _from_masks(cls, n: int, masks: Iterable[int],
                    labels: tuple[int, ...] | None = None) -> "SimplicialComplex":
        return cls(n, _antichain(masks), labels)

    @classmethod
    def empty_complex(cls, n: int = 1) -> "SimplicialComplex":
        """The complex {∅} containing only the empty face."""
        return cls(n, frozenset((0,)))

    # -- identity --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n == other.n and self.facet_masks == other.facet_masks

    def __hash__(self):
        return hash((self.n, self.facet_masks))

    def __repr__(self):
        facets = ",".join("".join(map(str, f)) if max(f, default=0) < 10
                          else "-".join(map(str, f))
                          for f in self.facets) or "∅"
        return f"SimplicialComplex(n={self.n}, <{facets}>)"

    # -- basic queries ----------------------------------------------------

    @cached_property
    def dim(self) -> int:
        return max(m.bit_count() for m in self.facet_masks) - 1

    @cached_property
    def vertex_mask(self) -> int:
        acc = 0
        for m in self.facet_masks:
            acc |= m
        return acc

    @property
    def vertices(self) -> tuple[int, ...]:
        return mask_to_face(self.vertex_mask)

    @property
    def facets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(mask_to_face(m) for m in sorted(self.facet_masks))

    def contains(self, face: FaceInput) -> bool:
        return self.contains_mask(face_to_mask(face))

    def contains_mask(self, mask: int) -> bool:
        return any(is_subset(mask, f) for f in self.facet_masks)

    @cached_property
    def _faces_by_dim(self) -> dict[int, tuple[int, ...]]:
        """Masks of all faces, keyed by dimension, each tuple sorted."""
        seen: dict[int, set[int]] = {-1: {0}}
        for facet in self.facet_masks:
            size = facet.bit_count()
            for k in range(1, size + 1):
                seen.setdefault(k - 1, set()).update(subfaces_of_size(facet, k))
        return {k: tuple(sorted(s)) for k, s in seen.items()}

    def face_masks_of_dim(self, k: int) -> tuple[int, ...]:
        return self._faces_by_dim.get(k, ())

    def faces_of_dim(self, k: int) -> set[tuple[int, ...]]:
        """All faces with exactly k+1 vertices; {()} at k = -1."""
        if k < -1:
            raise ValueError(f"face dimension must be >= -1, got {k}")
        return {mask_to_face(m) for m in self.face_masks_of_dim(k)}

    def all_face_masks(self) -> list[int]:
        out: list[int] = []
        for k in range(-1, self.dim + 1):
            out.extend(self.face_masks_of_dim(k))
        return out

    @cached_property
    def num_faces(self) -> int:
        return sum(len(v) for v in self._faces_by_dim.values())

    # -- enumerative invariants -------------------------------------------

    def f_vector(self) -> FVector:
        if self.dim < 0:
            raise ValueError("f-vector undefined for the complex {∅}")
        counts = [len(self.face_masks_of_dim(k)) for k in range(-1, self.dim + 1)]
        return FVector(tuple(counts))

    def h_vector(self) -> HVector:
        if self.dim < 0:
            raise ValueError("h-vector undefined for the complex {∅}")
        return f_to_h(self.f_vector())

    # -- constructions ------------------------------------------------------

    def link(self, face: FaceInput) -> "SimplicialComplex":
        """Faces disjoint from `face` whose union with it is again a face."""
        mask = face_to_mask(face)
        if not self.contains_mask(mask):
            raise ValueError(f"face {tuple(sorted(face))} not in the complex")
        return self._from_masks(
            self.n, (f & ~mask for f in self.facet_masks if is_subset(mask, f)))

    def contrastar(self, face: FaceInput) -> "SimplicialComplex":
        """All faces not containing `face`; for a facet, the complex minus it."""
        mask = face_to_mask(face)
        if mask == 0:
            raise ValueError("contrastar of the empty face is not defined")
        if not self.contains_mask(mask):
            raise ValueError(f"face {tuple(sorted(face))} not in the complex")
        kept: list[int] = []
        for f in self.facet_masks:
            if is_subset(mask, f):
                # drop exactly the subfaces containing `mask`
                kept.extend(f & ~(1 << b) for b in iter_bits(mask))
            else:
                kept.append(f)
        return self._from_masks(self.n, kept)

    def restriction(self, vertices: FaceInput) -> "SimplicialComplex":
        """Faces inside `vertices`, re-hosted on a dense universe.

        The result's vertex i+1 is the (i+1)-st smallest member of
        `vertices`; original names are kept in `labels`.
        """
        wmask = face_to_mask(vertices)
        if wmask & ~universe_mask(self.n):
            raise ValueError("restriction set outside the vertex universe")
        label_list = mask_to_face(wmask)
        position = {v: i for i, v in enumerate(label_list)}
        relabeled = []
        for f in self.facet_masks:
            fm = f & wmask
            acc = 0
            for v in mask_to_face(fm):
                acc |= 1 << position[v]
            relabeled.append(acc)
        return self._from_masks(len(label_list), relabeled, labels=label_list)

    def subcomplex_within(self, vertices: FaceInput) -> "SimplicialComplex":
        """Faces inside `vertices`, kept on the same universe (no relabeling)."""
        wmask = face_to_mask(vertices)
        return self._from_masks(self.n, (f & wmask for f in self.facet_masks))

    def cone(self, apex: int) -> "SimplicialComplex":
        """Join with a fresh apex vertex; the universe grows if apex = n+1."""
        if apex < 1 or apex > self.n + 1:
            raise ValueError(f"apex must lie in [1, {self.n + 1}], got {apex}")
        bit = 1 << (apex - 1)
        if self.vertex_mask & bit:
            raise ValueError(f"apex {apex} is already a vertex")
        return self._from_masks(max(self.n, apex),
                                (f | bit for f in self.facet_masks))

    # -- structure tests ---------------------------------------------------

    def is_pure(self) -> bool:
        sizes = {m.bit_count() for m in self.facet_masks}
        return len(sizes) == 1

    def is_strongly_connected(self) -> bool:
        """Facet-adjacency connectivity: facets meeting in dim-1 vertices.

        Non-pure complexes come out False (an undersized facet cannot be
        adjacent to anything) unless there is just one facet.
        """
        facets = sorted(self.facet_masks)
        if len(facets) <= 1:
            return True
        need = self.dim  # shared vertices required: (dim+1) - 1
        parent = list(range(len(facets)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(len(facets)):
            for j in range(i + 1, len(facets)):
                if (facets[i] & facets[j]).bit_count() == need:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[ri] = rj
        root = find(0)
        return all(find(i) == root for i in range(len(facets)))

    def is_connected(self) -> bool:
        return len(vertex_components(self)) <= 1


def _antichain(masks: Iterable[int]) -> frozenset[int]:
    """Inclusion-maximal members; the empty family collapses to {∅}."""
    distinct = sorted(set(masks), key=lambda m: (-m.bit_count(), m))
    kept: list[int] = []
    for m in distinct:
        if not any(is_subset(m, big) for big in kept):
            kept.append(m)
    return frozenset(kept) if kept else frozenset((0,))


def vertex_components(delta: SimplicialComplex) -> list[int]:
    """Vertex masks of the connected components (via shared facets)."""
    comps: list[int] = []
    for f in delta.facet_masks:
        if f == 0:
            continue
        touching = [c for c in comps if c & f]
        merged = f
        for c in touching:
            merged |= c
            comps.remove(c)
        comps.append(merged)
    return sorted(comps)


def f_to_h(f: FVector) -> HVector:
    """Expand sum_k f_{k-1} (t-1)^{d-k} and read h_k off the t^{d-k} terms."""
    d = len(f.entries) - 1
    coeffs = [0] * (d + 1)  # coeffs[j] multiplies t^j
    for k, fk in enumerate(f.entries):
        e = d - k
        for j in range(e + 1):
            coeffs[j] += fk * comb(e, j) * (-1) ** (e - j)
    return HVector(tuple(coeffs[d - k] for k in range(d + 1)))


def h_to_f(h: HVector) -> FVector:
    """Inverse transform: substitute t -> t+1 in sum_k h_k t^{d-k}."""
    d = h.d
    coeffs = [0] * (d + 1)
    for k, hk in enumerate(h.entries):
        e = d - k
        for j in range(e + 1):
            coeffs[j] += hk * comb(e, j)
    return FVector(tuple(coeffs[d - k] for k in range(d + 1)))


def ridge_sum(gamma: SimplicialComplex, sigma: SimplicialComplex,
              glue: Sequence[tuple[int, int]]) -> SimplicialComplex:
    """Glue two complexes of equal dimension d-1 along a full (d-2)-simplex.

    `glue` lists (gamma_vertex, sigma_vertex) pairs identifying the shared
    ridge; it must name a (d-2)-face of each side and nothing else gets
    identified.  Unglued sigma vertices are appended after gamma's universe
    in ascending order.
    """
    d = gamma.dim + 1
    if sigma.dim + 1 != d:
        raise ValueError(
            f"dimension mismatch: {gamma.dim} vs {sigma.dim}")
    if len(glue) != d - 1:
        raise ValueError(
            f"gluing must identify {d - 1} vertices, got {len(glue)}")
    gside = [g for g, _ in glue]
    sside = [s for _, s in glue]
    if len(set(gside)) != len(gside) or len(set(sside)) != len(sside):
        raise ValueError("gluing pairs must be distinct on both sides")
    if glue and not gamma.contains(gside):
        raise ValueError("gluing set is not a face of the first complex")
    if glue and not sigma.contains(sside):
        raise ValueError("gluing set is not a face of the second complex")

    rename = {s: g for g, s in glue}
    fresh = gamma.n
    for v in range(1, sigma.n + 1):
        if v not in rename:
            fresh += 1
            rename[v] = fresh

    masks = list(gamma.facet_masks)
    for f in sigma.facet_masks:
        acc = 0
        for v in mask_to_face(f):
            acc |= 1 << (rename[v] - 1)
        masks.append(acc)
    out = SimplicialComplex._from_masks(fresh, masks)

    wmask = face_to_mask(gside)
    inter = _face_set_intersection(gamma, sigma, rename)
    if inter != _full_simplex_faces(wmask):
        raise ValueError("gluing produced unintended intersection faces")
    if out.dim != d - 1:
        raise ValueError("ridge sum changed the dimension")
    return out


def _full_simplex_faces(mask: int) -> frozenset[int]:
    out = {0}
    for k in range(1, mask.bit_count() + 1):
        out.update(subfaces_of_size(mask, k))
    return frozenset(out)


def _face_set_intersection(gamma: SimplicialComplex, sigma: SimplicialComplex,
                           rename: dict[int, int]) -> frozenset[int]:
    gfaces = set()
    for k in range(-1, gamma.dim + 1):
        gfaces.update(gamma.face_masks_of_dim(k))
    sfaces = set()
    for k in range(-1, sigma.dim + 1):
        for f in sigma.face_masks_of_dim(k):
            acc = 0
            for v in mask_to_face(f):
                acc |= 1 << (rename[v] - 1)
            sfaces.add(acc)
    return frozenset(gfaces & sfaces)
