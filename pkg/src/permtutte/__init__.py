"""Exact computation of permutation Tutte polynomials of bipartite graphs."""

from .graphs import BipGraph, HabcSpec, MultiGraph
from .perm_tutte import compute_poly, evaluate
from .ratpoly import BiPoly

__all__ = ["BiPoly", "BipGraph", "HabcSpec", "MultiGraph", "compute_poly", "evaluate"]
__version__ = "0.1.0"
