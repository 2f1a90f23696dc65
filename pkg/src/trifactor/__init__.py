"""trifactor: triangle factors in dense graphs and their sparsifications.

Exact solvers and counters, a fractional clique-factor LP engine with
integer rounding, randomized triangle-matching subroutines, regularity
utilities, entropy diagnostics, and a Monte Carlo threshold-estimation
harness.
"""

from .graph_core import (Graph, GraphStats, TriangleMatching,
                         TripartiteGraph, enumerate_cliques,
                         falling_factorial, find_sparse_set, graph_stats,
                         neighborhood, read_graph, remove_vertices,
                         triangle_link, write_graph)

__all__ = [
    "Graph", "GraphStats", "TriangleMatching", "TripartiteGraph",
    "enumerate_cliques", "falling_factorial", "find_sparse_set",
    "graph_stats", "neighborhood", "read_graph", "remove_vertices",
    "triangle_link", "write_graph",
]

__version__ = "0.1.0"
