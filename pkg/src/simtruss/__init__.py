"""Truss decomposition of simplicial complexes.

The package computes, for every simplex of a complex, the largest k such
that it belongs to the simplicial k-truss: the maximal set of equally sized
simplices in which each member lies in at least k joists made entirely of
members. Edge-only complexes reduce to classic graph trussness.
"""
from .analysis import (ComplexStats, export_filtration, graph_trussness, is_valid_filtration,
                       joist_stats, skeleton, truss_sizes)
from .core import (Simplex, SimplicialComplex, connected_components, contains, extend_simplices,
                   lower_bound, parse_complex, read_complex)
from .engine import Decomposition, decompose, peel_level, top_n, trusses
from .generators import FlagParams, ManifoldParams, flag_complex, gen_flag_complex, gen_manifold
from .joists import CandidateStore, find_joists
from .oracle import brute_joists, brute_top_n, brute_trussness

__all__ = [
    "CandidateStore", "ComplexStats", "Decomposition", "FlagParams", "ManifoldParams",
    "Simplex", "SimplicialComplex", "brute_joists", "brute_top_n", "brute_trussness",
    "connected_components", "contains", "decompose", "export_filtration", "extend_simplices",
    "find_joists", "flag_complex", "gen_flag_complex", "gen_manifold", "graph_trussness", "is_valid_filtration",
    "joist_stats", "lower_bound", "parse_complex", "peel_level", "read_complex", "skeleton",
    "top_n", "truss_sizes", "trusses",
]
