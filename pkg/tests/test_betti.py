import os
import random

import pytest

from agstar import GF2, QQ, SimplicialComplex
from agstar.betti import (
    BettiTable,
    betti_table,
    cm_type,
    graded_type_column,
    hilbert_numerator_check,
)
from agstar.bitops import face_to_mask
from agstar.classify import classify, eta_polynomial, is_cm

import oracle
from conftest import (
    EMPTY_COMPLEX,
    ODD_DELTA_11,
    SIGMA,
    TETRA_BOUNDARY,
    TWO_POINTS,
    TWO_SPHERES,
    cycle,
    random_facets,
)

S = SimplicialComplex.from_facets


class TestBettiExamples:
    def test_two_isolated_vertices(self):
        table = betti_table(TWO_POINTS, QQ)
        assert table.beta(1, (1, 2)) == 1
        assert table.beta(0, ()) == 1
        assert dict(table.entries) == {(0, 0): 1, (1, 3): 1}

    def test_tetra_boundary_is_a_hypersurface(self):
        table = betti_table(TETRA_BOUNDARY, QQ)
        assert dict(table.entries) == {(0, 0): 1,
                                       (1, face_to_mask((1, 2, 3, 4))): 1}
        assert table.total(1) == 1  # the type column i = n - d sums to 1

    def test_sigma_type_three(self):
        assert cm_type(SIGMA, QQ) == 3
        table = betti_table(SIGMA, QQ)
        assert table.total(3) == 3  # n - d = 6 - 3

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            betti_table(EMPTY_COMPLEX, QQ)
        with pytest.raises(ValueError):
            cm_type(EMPTY_COMPLEX, QQ)


class TestType:
    def test_gorenstein_examples(self):
        assert cm_type(TETRA_BOUNDARY, QQ) == 1
        for n in (3, 4, 5, 6):
            assert cm_type(cycle(n), QQ) == 1

    def test_ridge_sum_type_additivity(self):
        assert cm_type(TWO_SPHERES, QQ) == 3

    def test_odd_delta_complex(self):
        assert cm_type(ODD_DELTA_11, QQ) == 4

    def test_type_matches_full_table_column(self):
        rng = random.Random(23)
        for _ in range(30):
            n = rng.randint(2, 6)
            sc = S(n, random_facets(rng, n))
            if sc.dim < 0:
                continue
            for field in (QQ, GF2):
                assert cm_type(sc, field) == \
                    betti_table(sc, field).total(n - sc.dim - 1)


class TestGradedColumn:
    def test_sigma_frozen_column(self):
        assert graded_type_column(SIGMA, QQ) == {3: 0, 4: 0, 5: 2, 6: 1}

    def test_two_spheres_column(self):
        assert graded_type_column(TWO_SPHERES, QQ) == {3: 0, 4: 1, 5: 0, 6: 2}

    def test_gorenstein_column_concentrated(self):
        col = graded_type_column(TETRA_BOUNDARY, QQ)
        assert col == {1: 0, 2: 0, 3: 0, 4: 1}

    def test_graded_identity_on_ag_star(self):
        # degree n-k carries eta_k for k >= 1 whenever the complex is
        # almost Gorenstein*
        for sc in (SIGMA, TWO_SPHERES, ODD_DELTA_11, cycle(5)):
            rep = classify(sc, QQ)
            assert rep.almost_gorenstein_star
            eta = eta_polynomial(sc.h_vector())
            col = graded_type_column(sc, QQ)
            n, d = sc.n, sc.dim + 1
            for k in range(1, n - max(n - d, 0) + 1):
                want = eta[k] if k < len(eta.entries) else 0
                assert col.get(n - k, 0) == want, (sc, k)


class TestHilbertNumerator:
    def test_examples(self):
        assert hilbert_numerator_check(TETRA_BOUNDARY, QQ)
        assert hilbert_numerator_check(SIGMA, QQ)
        assert hilbert_numerator_check(TWO_POINTS, QQ)

    def test_corpus(self):
        rng = random.Random(31)
        for _ in range(40):
            n = rng.randint(2, 6)
            sc = S(n, random_facets(rng, n))
            if sc.dim < 0:
                continue
            for field in (QQ, GF2):
                assert hilbert_numerator_check(sc, field), sc.facets


class TestTableInvariance:
    def test_oracle_agreement(self):
        rng = random.Random(37)
        for _ in range(25):
            n = rng.randint(2, 6)
            facets = random_facets(rng, n)
            sc = S(n, facets)
            if sc.dim < 0:
                continue
            for field, p in ((QQ, 0), (GF2, 2)):
                want = {(i, face_to_mask(F)): v
                        for (i, F), v in oracle.betti_numbers(n, facets, p).items()}
                assert dict(betti_table(sc, field).entries) == want

    def test_permutation_equivariance(self):
        rng = random.Random(41)
        for _ in range(15):
            n = rng.randint(3, 6)
            facets = random_facets(rng, n)
            sc = S(n, facets)
            if sc.dim < 0:
                continue
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            relabeled = S(n, [tuple(perm[v - 1] for v in f) for f in sc.facets])
            t1 = betti_table(sc, QQ)
            t2 = betti_table(relabeled, QQ)
            remapped = {}
            for (i, mask), v in t1.entries.items():
                newmask = 0
                for b in range(n):
                    if mask >> b & 1:
                        newmask |= 1 << (perm[b] - 1)
                remapped[(i, newmask)] = v
            assert remapped == dict(t2.entries)

    def test_cm_vanishing_above_codimension(self):
        rng = random.Random(43)
        for _ in range(40):
            n = rng.randint(2, 6)
            sc = S(n, random_facets(rng, n))
            if sc.dim < 0:
                continue
            for field in (QQ, GF2):
                if is_cm(sc, field):
                    table = betti_table(sc, field)
                    i_max = max(i for i, _ in table.entries)
                    assert i_max <= n - sc.dim - 1, sc.facets


class TestThreading:
    def test_thread_env_is_deterministic(self, monkeypatch):
        monkeypatch.setenv("AGSTAR_THREADS", "4")
        t_threaded = betti_table(SIGMA, QQ)
        monkeypatch.setenv("AGSTAR_THREADS", "1")
        t_plain = betti_table(SIGMA, QQ)
        assert dict(t_threaded.entries) == dict(t_plain.entries)

    def test_bad_env_value_ignored(self, monkeypatch):
        monkeypatch.setenv("AGSTAR_THREADS", "zzz")
        assert cm_type(SIGMA, QQ) == 3


class TestRendering:
    def test_rows_sorted_and_typed(self):
        table = betti_table(TWO_POINTS, QQ)
        assert table.rows() == [(0, (), 1), (1, (1, 2), 1)]
        assert isinstance(table, BettiTable)
