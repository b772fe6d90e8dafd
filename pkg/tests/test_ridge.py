import random
from itertools import combinations

import pytest

from agstar import GF2, QQ, SimplicialComplex, ridge_sum
from agstar.betti import cm_type
from agstar.classify import classify, delta_invariant, is_cm
from agstar.homology import reduced_homology_dim
from agstar.ridge import (
    Leaf,
    NotAlmostGorensteinStarError,
    Split,
    decompose,
    find_ridge_split,
    leaves,
    reassemble,
    split_indicator,
    verify_ridge_identities,
)

from conftest import (
    FIGURE_EIGHT,
    ODD_DELTA_11,
    SIGMA,
    TETRA_BOUNDARY,
    TWO_SPHERES,
    TWO_SPHERES_SUBDIV,
    cycle,
    random_pure,
)

S = SimplicialComplex.from_facets


class TestFindRidgeSplit:
    def test_two_spheres_split(self):
        ridge, left, right = find_ridge_split(TWO_SPHERES)
        assert ridge == (3, 4)
        assert set(left.facets) == {(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)}
        assert set(right.facets) == {(3, 4, 5), (3, 4, 6), (3, 5, 6), (4, 5, 6)}
        assert left.n == right.n == 6  # pieces stay on the parent universe

    def test_sphere_has_no_split(self):
        assert find_ridge_split(TETRA_BOUNDARY) is None

    def test_subdivided_two_spheres_has_no_split(self):
        assert find_ridge_split(TWO_SPHERES_SUBDIV) is None

    def test_figure_eight_cut_vertex(self):
        ridge, left, right = find_ridge_split(FIGURE_EIGHT)
        assert ridge == (3,)
        assert left.dim == right.dim == 1

    def test_preconditions(self):
        with pytest.raises(ValueError, match="pure"):
            find_ridge_split(S(4, [(1, 2, 3), (3, 4)]))
        with pytest.raises(ValueError, match="strongly connected"):
            find_ridge_split(S(5, [(1, 2, 3), (3, 4, 5)]))
        with pytest.raises(ValueError, match="dimension"):
            find_ridge_split(S(2, [(1,), (2,)]))

    def test_split_union_is_parent(self):
        rng = random.Random(5)
        found = 0
        for _ in range(200):
            sc = random_pure(rng, rng.randint(4, 6), rng.choice((2, 3)))
            if not sc.is_pure() or sc.dim < 1 or not sc.is_strongly_connected():
                continue
            got = find_ridge_split(sc)
            if got is None:
                continue
            found += 1
            ridge, left, right = got
            assert left.facet_masks | right.facet_masks == sc.facet_masks
            assert left.dim == right.dim == sc.dim
            # the two sides intersect exactly in the full simplex on the ridge
            shared = left.vertex_mask & right.vertex_mask
            assert shared.bit_count() == sc.dim
            assert left.contains_mask(shared) and right.contains_mask(shared)
        assert found >= 10


class TestSplitIndicator:
    def test_examples(self):
        assert split_indicator(TWO_SPHERES) > 0
        assert split_indicator(TWO_SPHERES_SUBDIV) == 0
        assert split_indicator(TETRA_BOUNDARY) == 0
        assert split_indicator(FIGURE_EIGHT) > 0

    def test_indicator_matches_split_existence(self):
        # for pure strongly connected complexes the Hochster count is
        # positive exactly when a face ridge disconnects
        rng = random.Random(7)
        for _ in range(150):
            sc = random_pure(rng, rng.randint(4, 6), rng.choice((2, 3)))
            if sc.dim < 1 or not sc.is_strongly_connected():
                continue
            has_split = find_ridge_split(sc) is not None
            assert (split_indicator(sc) > 0) == has_split, sc.facets


class TestDecompose:
    def test_two_spheres(self):
        tree = decompose(TWO_SPHERES, QQ)
        assert isinstance(tree, Split) and tree.ridge == (3, 4)
        pieces = list(leaves(tree))
        assert len(pieces) == 2
        assert all(classify(p, QQ).gorenstein_star for p in pieces)

    def test_sigma_is_indecomposable(self):
        tree = decompose(SIGMA, QQ)
        assert isinstance(tree, Leaf)

    def test_chain_of_spheres(self):
        glued = TETRA_BOUNDARY
        for k in range(2, 5):
            glued = ridge_sum(glued, TETRA_BOUNDARY, [(1, 1), (2, 2)])
            tree = decompose(glued, QQ)
            assert len(list(leaves(tree))) == k
            assert reassemble(tree) == glued

    def test_cycle_chain(self):
        glued = ridge_sum(cycle(3), cycle(4), [(3, 1)])
        glued = ridge_sum(glued, cycle(3), [(1, 1)])
        tree = decompose(glued, QQ)
        pieces = list(leaves(tree))
        assert len(pieces) == 3
        assert all(classify(p, QQ).gorenstein_star for p in pieces)

    def test_non_ag_star_rejected(self):
        with pytest.raises(NotAlmostGorensteinStarError):
            decompose(TWO_SPHERES_SUBDIV, QQ)
        with pytest.raises(NotAlmostGorensteinStarError):
            decompose(S(3, [(1, 2), (2, 3)]), QQ)

    def test_leaf_count_is_top_h_entry(self):
        for sc in (TWO_SPHERES, SIGMA, FIGURE_EIGHT, ODD_DELTA_11):
            h = tuple(sc.h_vector())
            tree = decompose(sc, QQ)
            assert len(list(leaves(tree))) == h[-1]
            assert reassemble(tree) == sc

    def test_leaves_are_ag_star_with_simple_top(self):
        for sc in (TWO_SPHERES, FIGURE_EIGHT):
            for leaf in leaves(decompose(sc, QQ)):
                assert reduced_homology_dim(leaf, leaf.dim, QQ) == 1
                rep = classify(leaf, QQ)
                assert rep.almost_gorenstein_star and rep.indecomposable

    def test_deterministic(self):
        t1 = decompose(TWO_SPHERES, QQ)
        t2 = decompose(TWO_SPHERES, QQ)
        assert t1 == t2


def _parts_of(glued, gamma, sigma, glue):
    """Recover the embedded copies of gamma/sigma inside the glued complex."""
    rename = {s: g for g, s in glue}
    fresh = gamma.n
    for v in range(1, sigma.n + 1):
        if v not in rename:
            fresh += 1
            rename[v] = fresh
    gamma_part = SimplicialComplex._from_masks(glued.n, gamma.facet_masks)
    sigma_masks = []
    for f in sigma.facet_masks:
        acc = 0
        for v in range(1, sigma.n + 1):
            if f >> (v - 1) & 1:
                acc |= 1 << (rename[v] - 1)
        sigma_masks.append(acc)
    sigma_part = SimplicialComplex._from_masks(glued.n, sigma_masks)
    return gamma_part, sigma_part


class TestRidgeIdentities:
    def test_two_spheres_all_pass(self):
        _, left, right = find_ridge_split(TWO_SPHERES)
        rep = verify_ridge_identities(left, right, TWO_SPHERES, QQ)
        assert all(v for v in rep.items().values())
        assert rep.consistent()
        assert cm_type(TWO_SPHERES, QQ) == 1 + 1 + 1

    def test_two_cycles_at_vertex(self):
        glued = ridge_sum(cycle(4), cycle(5), [(1, 1)])
        gamma, sigma = _parts_of(glued, cycle(4), cycle(5), [(1, 1)])
        rep = verify_ridge_identities(gamma, sigma, glued, QQ)
        assert all(v for v in rep.items().values())
        assert delta_invariant(glued.h_vector()) == 2

    def test_tree_glued_to_cycle(self):
        tree = S(2, [(1, 2)])
        glued = ridge_sum(tree, cycle(3), [(2, 1)])
        gamma, sigma = _parts_of(glued, tree, cycle(3), [(2, 1)])
        rep = verify_ridge_identities(gamma, sigma, glued, QQ)
        items = rep.items()
        assert items["i"] and items["ii"]
        assert items["iii"] is True    # everything in sight is CM
        assert items["vi"] is False    # the tree part has no top homology
        assert rep.consistent()        # ... the biconditionals still hold

    def test_random_ridge_sums_identities(self):
        rng = random.Random(11)
        done = 0
        while done < 30:
            n1 = rng.randint(3, 5)
            d = rng.choice((2, 3))
            a = random_pure(rng, n1, d)
            b = random_pure(rng, rng.randint(3, 5), d)
            if a.dim != d - 1 or b.dim != d - 1:
                continue
            ra = rng.choice(sorted(a.face_masks_of_dim(d - 2)))
            rb = rng.choice(sorted(b.face_masks_of_dim(d - 2)))
            from agstar.bitops import mask_to_face
            glue = list(zip(mask_to_face(ra), mask_to_face(rb)))
            glued = ridge_sum(a, b, glue)
            gamma, sigma = _parts_of(glued, a, b, glue)
            field = rng.choice((QQ, GF2))
            rep = verify_ridge_identities(gamma, sigma, glued, field)
            assert rep.h_additivity and rep.delta_additivity
            assert rep.consistent(), (a.facets, b.facets, glue)
            done += 1

    def test_rejects_non_ridge_sums(self):
        left = SimplicialComplex._from_masks(6, [0b000111])
        right = SimplicialComplex._from_masks(6, [0b111000])
        glued = SimplicialComplex._from_masks(6, [0b000111, 0b111000])
        with pytest.raises(ValueError):
            verify_ridge_identities(left, right, glued, QQ)
