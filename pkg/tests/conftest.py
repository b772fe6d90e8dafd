"""Shared fixtures: the named example complexes and corpus generators."""

from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path

import pytest

from agstar import GF2, QQ, SimplicialComplex

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

S = SimplicialComplex.from_facets

SIGMA = S(6, [(1, 3, 4), (1, 2, 5), (2, 3, 5), (3, 4, 5), (1, 2, 6),
              (1, 3, 6), (2, 3, 6), (1, 4, 6), (1, 5, 6), (4, 5, 6)])
TWO_SPHERES = S(6, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4),
                    (3, 4, 5), (3, 4, 6), (3, 5, 6), (4, 5, 6)])
TWO_SPHERES_SUBDIV = S(7, [(1, 2, 3), (1, 2, 4), (1, 3, 7), (1, 4, 7),
                           (2, 3, 7), (2, 4, 7), (3, 5, 7), (4, 5, 7),
                           (3, 6, 7), (4, 6, 7), (3, 5, 6), (4, 5, 6)])
SIGMA_SUBDIV = S(7, [(1, 3, 4), (1, 2, 5), (2, 3, 5), (3, 4, 5), (1, 2, 7),
                     (2, 6, 7), (1, 3, 7), (3, 6, 7), (2, 3, 6), (1, 4, 7),
                     (4, 6, 7), (1, 5, 7), (5, 6, 7), (4, 5, 6)])
K24 = S(6, [(1, 2), (2, 6), (1, 3), (3, 6), (1, 4), (4, 6), (1, 5), (5, 6)])
RP2_SIX = S(6, [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
                (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)])
TETRA_BOUNDARY = S(4, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])
OCTAHEDRON = S(6, [(1, 2, 3), (1, 2, 4), (1, 5, 3), (1, 5, 4),
                   (6, 2, 3), (6, 2, 4), (6, 5, 3), (6, 5, 4)])
FIGURE_EIGHT = S(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])
TWO_POINTS = S(2, [(1,), (2,)])
FULL_TRIANGLE = S(3, [(1, 2, 3)])
SINGLE_EDGE = S(2, [(1, 2)])
EMPTY_COMPLEX = SimplicialComplex.empty_complex(1)

# found by the delta-parity scan: 2-neighborly, uniformly CM, top homology K,
# h = (1,3,6,1), type 4, delta 3
ODD_DELTA_11 = S(6, [(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 5), (2, 4, 5),
                     (3, 4, 5), (2, 3, 6), (1, 4, 6), (3, 4, 6), (1, 5, 6),
                     (2, 5, 6)])


def cycle(n: int) -> SimplicialComplex:
    return S(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def random_facets(rng: random.Random, n: int, max_size: int = 4,
                  max_count: int = 8) -> list[tuple[int, ...]]:
    return [tuple(sorted(rng.sample(range(1, n + 1),
                                    rng.randint(1, min(max_size, n)))))
            for _ in range(rng.randint(1, max_count))]


def random_pure(rng: random.Random, n: int, d: int,
                max_count: int = 8) -> SimplicialComplex:
    pool = list(combinations(range(1, n + 1), d))
    k = rng.randint(1, min(len(pool), max_count))
    return S(n, rng.sample(pool, k))


@pytest.fixture(scope="session")
def both_fields():
    return (QQ, GF2)
