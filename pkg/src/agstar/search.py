"""Exhaustive search over small pure complexes.

Enumerates every pure (d-1)-dimensional complex using all of {1, ..., n}
(facet families = nonempty subsets of the d-subsets, filtered to cover the
vertex set), classifies the survivors of a chain of cheap necessary
filters, and emits the complexes matching a predicate.  Every emitted hit
is re-verified through the definition-level route before it is yielded, so
the fast filters can never change the answer, only the speed.

The family order is the ascending integer encoding over the
lexicographically ordered d-subsets, which makes streams reproducible and
lets a plain cursor act as a checkpoint.  Long delta-parity scans persist
that cursor plus the running histogram in a small text file and can resume
from it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Iterator

import numpy as np

from .betti import cm_type
from .classify import (
    ClassificationReport,
    classify,
    delta_invariant,
    eta_polynomial,
    is_almost_gorenstein_star,
    is_cm,
    is_uniformly_cm,
)
from .complex_core import SimplicialComplex, f_to_h, FVector
from .homology import reduced_homology_dim
from .linalg import FieldSpec, rank_dense

PREDICATES = ("uniformly_cm", "ag_star", "ag_star_indecomposable",
              "gorenstein_star")

PROGRESS_CHUNK = 1 << 16


class ResourceCapError(RuntimeError):
    """The configured family-scan cap was exceeded."""


class SearchVerificationError(RuntimeError):
    """A fast-path hit failed its definition-level re-verification."""


@dataclass(frozen=True)
class SearchSpec:
    n: int
    d: int
    field: FieldSpec
    predicate: str
    eta_filter: tuple[int, ...] | None = None
    delta_parity_scan: bool = False
    up_to_iso: bool = False
    limit: int | None = None
    scan_cap: int | None = None

    def __post_init__(self):
        if self.predicate not in PREDICATES:
            raise ValueError(f"unknown predicate {self.predicate!r}")
        if not 1 <= self.d <= self.n:
            raise ValueError("need 1 <= d <= n")
        if self.up_to_iso and self.n > 8:
            raise ValueError("canonical forms are capped at n <= 8")


@dataclass(frozen=True)
class SearchHit:
    index: int
    complex: SimplicialComplex
    report: ClassificationReport


@dataclass
class DeltaParityReport:
    spec: SearchSpec
    histogram: dict[int, int] = dataclass_field(default_factory=dict)
    certificates: list[tuple[tuple[int, ...], ...]] = dataclass_field(default_factory=list)
    scanned: int = 0
    hits: int = 0
    complete: bool = False

    @property
    def all_even(self) -> bool:
        return all(d % 2 == 0 for d in self.histogram)


def facet_pool(n: int, d: int) -> list[int]:
    """Masks of all d-subsets of [n] in lexicographic vertex order."""
    pool = []
    for combo in combinations(range(n), d):
        mask = 0
        for b in combo:
            mask |= 1 << b
        pool.append(mask)
    return pool


def _strongly_connected(sel: list[int], d: int) -> bool:
    k = len(sel)
    if k <= 1:
        return True
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if (sel[i] & sel[j]).bit_count() == d - 1:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    root = find(0)
    return all(find(i) == root for i in range(k))


def _connected_masks(edgelike: list[int]) -> bool:
    comps: list[int] = []
    for e in edgelike:
        touching = [c for c in comps if c & e]
        merged = e
        for c in touching:
            merged |= c
            comps.remove(c)
        comps.append(merged)
    return len(comps) <= 1


def _f_vector_of_family(sel: list[int], n: int, d: int) -> tuple[int, ...]:
    """(f_{-1}, ..., f_{d-1}) of the pure family, assuming it covers [n]."""
    counts = [1, n]
    levels = [set(sel)]  # faces of size d, then d-1, ..., down to 2
    for _ in range(d, 2, -1):
        below: set[int] = set()
        for m in levels[-1]:
            mm = m
            while mm:
                low = mm & -mm
                below.add(m ^ low)
                mm ^= low
        levels.append(below)
    for size in range(2, d + 1):
        counts.append(len(levels[d - size]))
    return tuple(counts)


def _partial_sum_filter(h: tuple[int, ...]) -> bool:
    """Necessary for uniform CMness: trailing h sums dominate leading ones."""
    d = len(h) - 1
    for i in range(d + 1):
        if sum(h[d - j] for j in range(i + 1)) < sum(h[j] for j in range(i + 1)):
            return False
    return True


def _boundary_top_array(sel: list[int], edges: list[int]) -> np.ndarray:
    row = {e: i for i, e in enumerate(edges)}
    arr = np.zeros((len(edges), len(sel)), dtype=np.int64)
    for j, t in enumerate(sel):
        mm = t
        pos = 0
        while mm:
            low = mm & -mm
            arr[row[t ^ low], j] = -1 if pos % 2 else 1
            mm ^= low
            pos += 1
    return arr


def _graph_is_bridgeless(sel: list[int], n: int) -> bool:
    """Every edge deletion keeps all n vertices in one component."""
    full = (1 << n) - 1
    for skip in range(len(sel)):
        comps: list[int] = []
        for i, e in enumerate(sel):
            if i == skip:
                continue
            touching = [c for c in comps if c & e]
            merged = e
            for c in touching:
                merged |= c
                comps.remove(c)
            comps.append(merged)
        if len(comps) != 1 or comps[0] != full:
            return False
    return True


def _reverify(sc: SimplicialComplex, field: FieldSpec, predicate: str) -> bool:
    """Definition-level confirmation of a fast-path hit."""
    if predicate == "uniformly_cm":
        return is_uniformly_cm(sc, field, method="definition")
    if predicate == "gorenstein_star":
        return (is_cm(sc, field, method="reisner")
                and reduced_homology_dim(sc, sc.dim, field) == 1
                and cm_type(sc, field) == 1)
    ag = (is_uniformly_cm(sc, field, method="definition")
          and delta_invariant(sc.h_vector()) == cm_type(sc, field) - 1)
    if predicate == "ag_star":
        return ag
    return ag and reduced_homology_dim(sc, sc.dim, field) == 1


@lru_cache(maxsize=1 << 15)
def _canonical_cached(n: int, facets: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    for perm in permutations(range(n)):
        remapped = []
        for mask in facets:
            acc = 0
            mm = mask
            while mm:
                low = mm & -mm
                acc |= 1 << perm[low.bit_length() - 1]
                mm ^= low
            remapped.append(acc)
        remapped.sort()
        key = tuple(remapped)
        if best is None or key < best:
            best = key
    return best


def canonical_form(delta: SimplicialComplex) -> tuple[int, ...]:
    """Lexicographically least facet-mask tuple over all vertex relabelings."""
    return _canonical_cached(delta.n, tuple(sorted(delta.facet_masks)))


def enumerate_search(spec: SearchSpec, start: int = 1,
                     on_progress: Callable[[int, int], None] | None = None,
                     ) -> Iterator[SearchHit]:
    """Yield (index, complex, report) for every predicate match, in order.

    `start` is the first family index to examine (for resuming);
    `on_progress(next_index, hits_so_far)` fires every 2^16 families.
    """
    n, d, field = spec.n, spec.d, spec.field
    pool = facet_pool(n, d)
    m = len(pool)
    full = (1 << n) - 1
    want = spec.predicate
    eta_target = spec.eta_filter
    seen_iso: set[tuple[int, ...]] = set()
    hits = 0
    examined = 0
    for fam in range(max(1, start), 1 << m):
        if on_progress is not None and fam % PROGRESS_CHUNK == 0:
            on_progress(fam, hits)
        examined += 1
        if spec.scan_cap is not None and examined > spec.scan_cap:
            raise ResourceCapError(
                f"scan cap of {spec.scan_cap} families exceeded at index {fam}")
        sel = []
        cover = 0
        mm = fam
        while mm:
            low = mm & -mm
            mask = pool[low.bit_length() - 1]
            sel.append(mask)
            cover |= mask
            mm ^= low
        if cover != full:
            continue
        if not _strongly_connected(sel, d):
            continue
        f = _f_vector_of_family(sel, n, d)
        h = tuple(f_to_h(FVector(f)))
        if not _partial_sum_filter(h):
            continue

        if d == 2:
            # CM = connected (implied by strong connectivity + coverage);
            # uniformly CM = additionally bridgeless
            if not _graph_is_bridgeless(sel, n):
                continue
            sc = SimplicialComplex._from_masks(n, sel)
        elif d == 3:
            ok = True
            for v in range(n):
                bit = 1 << v
                link_edges = [t & ~bit for t in sel if t & bit]
                if not _connected_masks(link_edges):
                    ok = False
                    break
            if not ok:
                continue
            edge_set: set[int] = set()
            for t in sel:
                b0 = t & -t
                rest = t ^ b0
                b1 = rest & -rest
                b2 = rest ^ b1
                edge_set.update((t ^ b0, t ^ b1, t ^ b2))
            edges = sorted(edge_set)
            arr = _boundary_top_array(sel, edges)
            r_full = rank_dense(arr, field)
            if len(edges) - (n - 1) - r_full != 0:  # dim H~_1 over the field
                continue
            # uniformly CM <=> no facet column is forced in every basis:
            # deleting column j must keep the rank
            ok = True
            for j in range(len(sel)):
                if rank_dense(np.delete(arr, j, axis=1), field) != r_full:
                    ok = False
                    break
            if not ok:
                continue
            sc = SimplicialComplex._from_masks(n, sel)
        else:
            sc = SimplicialComplex._from_masks(n, sel)
            if not is_uniformly_cm(sc, field):
                continue

        if want == "gorenstein_star":
            if h[d] != 1 or cm_type(sc, field) != 1:
                continue
        elif want in ("ag_star", "ag_star_indecomposable"):
            if want == "ag_star_indecomposable" and h[d] != 1:
                continue
            if not is_almost_gorenstein_star(sc, field):
                continue
        if eta_target is not None and tuple(eta_polynomial(sc.h_vector())) != eta_target:
            continue
        if spec.up_to_iso:
            canon = canonical_form(sc)
            if canon in seen_iso:
                continue
            seen_iso.add(canon)
        if not _reverify(sc, field, want):
            raise SearchVerificationError(
                f"family {fam}: fast path disagrees with definitions")
        report = classify(sc, field)
        hit = SearchHit(fam, sc, report)
        hits += 1
        yield hit
        if spec.limit is not None and hits >= spec.limit:
            return


def scan_counts(spec: SearchSpec) -> tuple[int, int]:
    """(families visited, covering candidates) for the full range."""
    pool = facet_pool(spec.n, spec.d)
    full = (1 << spec.n) - 1
    covering = 0
    for fam in range(1, 1 << len(pool)):
        cover = 0
        mm = fam
        while mm:
            low = mm & -mm
            cover |= pool[low.bit_length() - 1]
            mm ^= low
        if cover == full:
            covering += 1
    return (1 << len(pool)) - 1, covering


# -- delta-parity scanning with checkpoints ----------------------------------

CHECKPOINT_MAGIC = "agstar-checkpoint 1"


def save_checkpoint(path: str, spec: SearchSpec, cursor: int,
                    report: DeltaParityReport) -> None:
    lines = [CHECKPOINT_MAGIC,
             f"n {spec.n}", f"d {spec.d}",
             f"field {spec.field.characteristic}",
             f"predicate {spec.predicate}",
             f"cursor {cursor}",
             f"scanned {report.scanned}",
             f"hits {report.hits}"]
    for dlt in sorted(report.histogram):
        lines.append(f"delta {dlt} {report.histogram[dlt]}")
    for facets in report.certificates:
        lines.append("cert " + ",".join("-".join(map(str, f)) for f in facets))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_checkpoint(path: str, spec: SearchSpec) -> tuple[int, DeltaParityReport]:
    with open(path, encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != CHECKPOINT_MAGIC:
        raise ValueError(f"{path}: not a checkpoint file")
    fields = {}
    report = DeltaParityReport(spec)
    for ln in lines[1:]:
        key, _, rest = ln.partition(" ")
        if key == "delta":
            dlt, cnt = rest.split()
            report.histogram[int(dlt)] = int(cnt)
        elif key == "cert":
            facets = tuple(tuple(map(int, part.split("-")))
                           for part in rest.split(","))
            report.certificates.append(facets)
        else:
            fields[key] = rest
    for key, want in (("n", spec.n), ("d", spec.d),
                      ("field", spec.field.characteristic)):
        if int(fields[key]) != want:
            raise ValueError(f"{path}: checkpoint is for a different scan "
                             f"({key}={fields[key]}, expected {want})")
    if fields["predicate"] != spec.predicate:
        raise ValueError(f"{path}: checkpoint is for a different predicate")
    report.scanned = int(fields["scanned"])
    report.hits = int(fields["hits"])
    return int(fields["cursor"]), report


def run_delta_parity(spec: SearchSpec, checkpoint_path: str | None = None,
                     resume: bool = False) -> DeltaParityReport:
    """Histogram the delta invariant over every predicate hit.

    Odd values are collected as explicit counterexample certificates
    (facet lists).  Interrupts propagate after the checkpoint is written,
    so a rerun with resume=True continues where the scan stopped.
    """
    cursor = 1
    if resume and checkpoint_path:
        cursor, report = load_checkpoint(checkpoint_path, spec)
    else:
        report = DeltaParityReport(spec)
    pool_size = len(facet_pool(spec.n, spec.d))
    end = 1 << pool_size

    def checkpoint(next_index: int):
        if checkpoint_path:
            save_checkpoint(checkpoint_path, spec, next_index, report)

    last = cursor
    try:
        def on_progress(next_index: int, hits: int):
            nonlocal last
            report.scanned += next_index - last
            last = next_index
            checkpoint(next_index)

        for hit in enumerate_search(spec, start=cursor, on_progress=on_progress):
            dlt = hit.report.delta
            report.histogram[dlt] = report.histogram.get(dlt, 0) + 1
            report.hits += 1
            if dlt % 2 != 0:
                report.certificates.append(hit.complex.facets)
    except (KeyboardInterrupt, ResourceCapError):
        checkpoint(last)
        raise
    report.scanned += end - last
    report.complete = True
    checkpoint(end)
    return report
