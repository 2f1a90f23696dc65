"""Seeded random sparsification and exact subsampling.

Edges are retained iff a per-edge uniform threshold falls below the
retention probability, so for a fixed seed the sparsifications are nested
across p (monotone coupling).  Thresholds are keyed by the canonical edge
id, independent of the host graph's size or edge order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph_core import Graph, TripartiteGraph
from .rng import (STREAM_SPARSIFY, STREAM_SUBSAMPLE, edge_key, mix_keys,
                  uniform_array, uniform_at)


@dataclass(frozen=True)
class SparsifyParams:
    p: float
    seed: int
    round_count: int = 1

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("retention probability must lie in [0,1]")
        if self.round_count < 1:
            raise ValueError("round_count must be positive")


def edge_threshold(seed: int, u: int, v: int, round_index: int = 0) -> float:
    """The uniform in [0,1) deciding retention of edge {u,v}."""
    base = mix_keys(seed, STREAM_SPARSIFY, round_index)
    return uniform_at(base, edge_key(u, v))


def _rebuild(g: Graph, edges: list[tuple[int, int]]) -> Graph:
    if isinstance(g, TripartiteGraph):
        return TripartiteGraph(g.part_sizes, edges, g.source_ids)
    return Graph(g.n, edges, g.source_ids)


def _keep_edges(g: Graph, p: float, seed: int, round_index: int
                ) -> list[tuple[int, int]]:
    edges = g.edges()
    if not edges:
        return []
    keys = np.array([edge_key(u, v) for u, v in edges], dtype=np.uint64)
    base = mix_keys(seed, STREAM_SPARSIFY, round_index)
    thresholds = uniform_array(base, keys)
    return [e for e, t in zip(edges, thresholds) if t < p]


def sparsify(g: Graph, params: SparsifyParams) -> Graph:
    """G_p: keep each edge independently with probability p, seeded."""
    return _rebuild(g, _keep_edges(g, params.p, params.seed, 0))


def split_rounds(g: Graph, p: float, rounds: int, seed: int) -> list[Graph]:
    """`rounds` independent subgraphs, each distributed as G_{p/rounds}.

    Their union is distributed as G_{p'} with p' = 1-(1-p/rounds)^rounds.
    split_rounds(g, p, 1, seed) coincides with sparsify at probability p.
    """
    if rounds < 1:
        raise ValueError("rounds must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError("retention probability must lie in [0,1]")
    return [_rebuild(g, _keep_edges(g, p / rounds, seed, r))
            for r in range(rounds)]


def subsample_exact(edge_set: Iterable[tuple[int, int]], target: int,
                    seed: int) -> set[tuple[int, int]]:
    """Uniformly random subset of exactly ``target`` edges.

    Implemented by ranking edges under seeded priorities, so the result
    is independent of the iteration order of ``edge_set``.
    """
    edges = sorted((min(e), max(e)) for e in edge_set)
    if not 0 <= target <= len(edges):
        raise ValueError(f"target {target} out of range 0..{len(edges)}")
    ranked = sorted(edges,
                    key=lambda e: (mix_keys(seed, STREAM_SUBSAMPLE,
                                            edge_key(*e)), e))
    return set(ranked[:target])
