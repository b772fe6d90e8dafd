"""agstar: exact classification of simplicial complexes.

Decides Cohen-Macaulayness (Reisner), 2-CM, uniformly CM, Gorenstein* and
almost Gorenstein* over a chosen exact coefficient field, computes the
attached enumerative data (f/h-vectors, type, delta, eta-polynomial, graded
Betti numbers via squarefree restrictions), and decomposes almost
Gorenstein* complexes into indecomposable pieces along shared ridges.
"""

__version__ = "0.1.0"

from .complex_core import (
    FVector,
    HVector,
    SimplicialComplex,
    f_to_h,
    h_to_f,
    ridge_sum,
)
from .linalg import GF2, QQ, FieldSpec, SparseMatrix, rank, rank_profile

__all__ = [
    "FVector",
    "HVector",
    "SimplicialComplex",
    "f_to_h",
    "h_to_f",
    "ridge_sum",
    "FieldSpec",
    "SparseMatrix",
    "QQ",
    "GF2",
    "rank",
    "rank_profile",
    "__version__",
]
