"""Decision procedures for Cohen-Macaulay-type properties of complexes.

All predicates are parameterized by the coefficient field.  The layering:

  is_cm               Reisner's criterion (link homology vanishing below
                      the expected degree), with closed-form shortcuts in
                      dimensions <= 2 that are equivalent to the full scan.
  is_two_cm           every vertex deletion stays CM of full dimension.
  is_uniformly_cm     every single-facet deletion stays CM of full
                      dimension; the default mode decides this through the
                      equivalent strict top-homology drop, the definition
                      mode re-runs Reisner on every facet contrastar.
  is_gorenstein_star  CM, one-dimensional top homology, type 1.
  is_almost_gorenstein_star
                      uniformly CM with delta = type - 1; dimension 1 is
                      decided on the graph (every block a cycle), dimension
                      2 through ridge decomposition down to pieces with
                      one-dimensional top homology.

Dimension-0 complexes get the total extension "uniformly CM iff at least
two vertices" (deleting a point facet keeps a nonempty point set); reports
flag it.  The same extension makes a set of k >= 2 points almost
Gorenstein*, matching the coordinate-axes rings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .betti import cm_type
from .complex_core import HVector, SimplicialComplex, vertex_components
from .homology import reduced_homology_dim, reduced_homology_dims
from .linalg import FieldSpec


@dataclass(frozen=True)
class EtaPolynomial:
    """Coefficients eta_0..eta_{d-1}; always symmetric in its indices."""

    entries: tuple[int, ...]

    def __post_init__(self):
        d = len(self.entries)
        for k in range(d):
            if self.entries[k] != self.entries[d - 1 - k]:
                raise ValueError(f"eta coefficients not symmetric: {self.entries}")

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def value_at_one(self) -> int:
        return sum(self.entries)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.entries):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                coef = "" if c == 1 else ("-" if c == -1 else str(c))
                power = "t" if i == 1 else f"t^{i}"
                terms.append(f"{coef}{power}")
        return " + ".join(terms) if terms else "0"


def eta_polynomial(h: HVector) -> EtaPolynomial:
    """eta_i = (h_d + ... + h_{d-i}) - (h_0 + ... + h_i), i = 0..d-1."""
    d = h.d
    entries = []
    for i in range(d):
        head = sum(h[d - j] for j in range(i + 1))
        tail = sum(h[j] for j in range(i + 1))
        entries.append(head - tail)
    return EtaPolynomial(tuple(entries))


def delta_invariant(h: HVector) -> int:
    """Sum of the eta coefficients; the eta polynomial evaluated at 1."""
    return eta_polynomial(h).value_at_one()


# -- Cohen-Macaulayness -----------------------------------------------------

def is_cm(delta: SimplicialComplex, field: FieldSpec, method: str = "auto") -> bool:
    """Reisner's criterion over the field.

    method="reisner" forces the face-by-face link-homology scan;
    method="auto" uses equivalent low-dimensional shortcuts:
    dimension <= 0 is always CM, a 1-complex is CM iff pure and connected,
    a pure 2-complex is CM iff connected with connected vertex links and
    vanishing first homology.
    """
    if method == "reisner":
        return _is_cm_reisner(delta, field)
    if delta.dim <= 0:
        return True
    if not delta.is_pure():
        return False
    if delta.dim == 1:
        return delta.is_connected()
    if delta.dim == 2:
        return (delta.is_connected()
                and all(delta.link((v,)).is_connected() for v in delta.vertices)
                and reduced_homology_dim(delta, 1, field) == 0)
    return _is_cm_reisner(delta, field)


def _is_cm_reisner(delta: SimplicialComplex, field: FieldSpec) -> bool:
    from .bitops import mask_to_face
    expected_top = delta.dim
    for k in range(-1, delta.dim + 1):
        for fmask in delta.face_masks_of_dim(k):
            link = delta.link(mask_to_face(fmask))
            allowed = expected_top - (k + 1)
            for degree, value in reduced_homology_dims(link, field).items():
                if degree != allowed and value:
                    return False
    return True


def is_two_cm(delta: SimplicialComplex, field: FieldSpec) -> bool:
    """CM and every vertex deletion is CM of unchanged dimension."""
    if not is_cm(delta, field):
        return False
    for v in delta.vertices:
        cost = delta.contrastar((v,))
        if cost.dim != delta.dim or not is_cm(cost, field):
            return False
    return True


def is_uniformly_cm(delta: SimplicialComplex, field: FieldSpec,
                    method: str = "homology") -> bool:
    """CM and every facet deletion is CM of unchanged dimension.

    method="homology" decides via the equivalent condition that deleting
    any facet strictly drops the top homology dimension; this is the fast
    route.  method="definition" re-runs the full Reisner scan on every
    facet contrastar.  Dimension 0 uses the >= 2 vertices extension.
    """
    if delta.dim < 0:
        return False
    if delta.dim == 0:
        return len(delta.face_masks_of_dim(0)) >= 2
    if not is_cm(delta, field):
        return False
    top = delta.dim
    if method == "definition":
        for facet in delta.facets:
            cost = delta.contrastar(facet)
            if cost.dim != top or not is_cm(cost, field, method="reisner"):
                return False
        return True
    top_dim = reduced_homology_dim(delta, top, field)
    if top_dim == 0:
        return False
    return all(reduced_homology_dim(delta.contrastar(facet), top, field) < top_dim
               for facet in delta.facets)


# -- Gorenstein* and almost Gorenstein* -------------------------------------

def is_gorenstein_star(delta: SimplicialComplex, field: FieldSpec) -> bool:
    """CM with one-dimensional top homology and type 1."""
    if delta.dim < 0:
        raise ValueError("requires a complex of dimension >= 0")
    if not is_cm(delta, field):
        return False
    if reduced_homology_dim(delta, delta.dim, field) != 1:
        return False
    return cm_type(delta, field) == 1


def is_almost_gorenstein_star(delta: SimplicialComplex, field: FieldSpec,
                              method: str = "auto") -> bool:
    """Uniformly CM with delta = type - 1.

    method="criterion" always evaluates that equality (type through the
    full squarefree Tor scan).  method="auto" short-circuits in dimension
    1 (connected with every block a cycle) and dimension 2 (uniformly CM
    and ridge-decomposable into pieces with one-dimensional top homology);
    both routes agree with the criterion.
    """
    if delta.dim < 0:
        raise ValueError("requires a complex of dimension >= 0")
    if delta.dim == 0:
        return len(delta.face_masks_of_dim(0)) >= 2
    if method == "auto":
        if delta.dim == 1:
            return _is_cycle_ridge_sum(delta)
        if delta.dim == 2:
            if not is_uniformly_cm(delta, field):
                return False
            return _decomposes_to_simple_tops(delta, field)
    if not is_uniformly_cm(delta, field):
        return False
    return delta_invariant(delta.h_vector()) == cm_type(delta, field) - 1


def _decomposes_to_simple_tops(delta: SimplicialComplex,
                               field: FieldSpec) -> bool:
    from .ridge import find_ridge_split
    top_dim = reduced_homology_dim(delta, delta.dim, field)
    if top_dim == 1:
        return True
    if top_dim == 0:
        return False
    found = find_ridge_split(delta)
    if found is None:
        return False
    _, left, right = found
    return _decomposes_to_simple_tops(left, field) \
        and _decomposes_to_simple_tops(right, field)


def is_almost_gorenstein_dim1(delta: SimplicialComplex,
                              field: FieldSpec | None = None) -> bool:
    """Almost Gorenstein in dimension one: a tree or a ridge sum of cycles.

    Unlike the starred property this admits trees (zero top homology).
    The answer is independent of the field.
    """
    if delta.dim != 1:
        raise ValueError("requires a complex of dimension exactly 1")
    if not delta.is_connected() or not delta.is_pure():
        return False
    nverts = len(delta.face_masks_of_dim(0))
    nedges = len(delta.face_masks_of_dim(1))
    if nedges == nverts - 1:
        return True  # a connected graph with n-1 edges is a tree
    return _is_cycle_ridge_sum(delta)


def _is_cycle_ridge_sum(delta: SimplicialComplex) -> bool:
    """Connected graph whose biconnected blocks are all cycles."""
    if delta.dim != 1 or not delta.is_pure() or not delta.is_connected():
        return False
    edges = [tuple(sorted(e)) for e in delta.faces_of_dim(1)]
    for block in biconnected_blocks(edges):
        verts = {v for e in block for v in e}
        if len(block) != len(verts) or len(block) < 3:
            return False
    return True


def biconnected_blocks(edges: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Edge sets of the biconnected components (iterative Hopcroft-Tarjan)."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for idx, (u, v) in enumerate(edges):
        adj.setdefault(u, []).append((v, idx))
        adj.setdefault(v, []).append((u, idx))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    edge_stack: list[int] = []
    blocks: list[list[tuple[int, int]]] = []
    timer = 0
    for root in sorted(adj):
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(sorted(adj[root])))]
        while stack:
            v, parent_edge, neighbors = stack[-1]
            child_found = False
            for w, idx in neighbors:
                if idx == parent_edge:
                    continue
                if w not in disc:
                    edge_stack.append(idx)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, idx, iter(sorted(adj[w]))))
                    child_found = True
                    break
                if disc[w] < disc[v]:
                    # back edge to an ancestor; descendant edges were
                    # already stacked when first discovered from below
                    edge_stack.append(idx)
                    low[v] = min(low[v], disc[w])
            if child_found:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    block = []
                    while True:
                        idx = edge_stack.pop()
                        block.append(edges[idx])
                        if idx == parent_edge:
                            break
                    blocks.append(block)
    return blocks


# -- the consolidated report -------------------------------------------------

@dataclass(frozen=True)
class ClassificationReport:
    characteristic: int
    dim: int
    pure: bool
    strongly_connected: bool
    f: tuple[int, ...] | None
    h: tuple[int, ...] | None
    cm: bool
    two_cm: bool
    uniformly_cm: bool
    type: int | None
    delta: int | None
    eta: tuple[int, ...] | None
    gorenstein_star: bool
    almost_gorenstein_star: bool
    indecomposable: bool | None
    notes: tuple[str, ...]


def classify(delta: SimplicialComplex, field: FieldSpec) -> ClassificationReport:
    """Assemble the full report; type is computed only when uniformly CM."""
    notes: list[str] = []
    dim = delta.dim
    if dim < 0:
        return ClassificationReport(
            characteristic=field.characteristic, dim=dim, pure=True,
            strongly_connected=True, f=None, h=None, cm=True, two_cm=False,
            uniformly_cm=False, type=None, delta=None, eta=None,
            gorenstein_star=False, almost_gorenstein_star=False,
            indecomposable=None,
            notes=("complex {∅}: CM only; remaining predicates reported "
                   "False by convention",))

    f = tuple(delta.f_vector())
    h_vec = delta.h_vector()
    h = tuple(h_vec)
    eta = eta_polynomial(h_vec)
    dlt = eta.value_at_one()
    cm = is_cm(delta, field)
    two_cm = is_two_cm(delta, field) if cm else False
    ucm = is_uniformly_cm(delta, field)
    if dim == 0:
        notes.append("dimension 0: uniformly CM / almost Gorenstein* use "
                     "the >= 2 vertices extension")
    type_: int | None = None
    gstar = False
    agstar = False
    indecomposable: bool | None = None
    if ucm:
        type_ = cm_type(delta, field)
        top_dim = reduced_homology_dim(delta, dim, field)
        gstar = top_dim == 1 and type_ == 1
        agstar = dlt == type_ - 1 if dim >= 1 else True
        if agstar:
            indecomposable = top_dim == 1
    else:
        notes.append("type omitted: computed only for uniformly CM complexes")
    return ClassificationReport(
        characteristic=field.characteristic, dim=dim, pure=delta.is_pure(),
        strongly_connected=delta.is_strongly_connected(), f=f, h=h, cm=cm,
        two_cm=two_cm, uniformly_cm=ucm, type=type_, delta=dlt,
        eta=tuple(eta), gorenstein_star=gstar, almost_gorenstein_star=agstar,
        indecomposable=indecomposable, notes=tuple(notes))
