"""Exact triangle/clique factor search and labelled-embedding counting.

Everything here is exact: searches are complete backtracking with fixed
branch order (so witnesses are deterministic) and counts are Python big
integers.  Labelled embedding counts follow the ordered convention: an
embedding of t disjoint labelled triangles into a tripartite host, part i
slots mapping into part i.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .graph_core import (Graph, TriangleMatching, TripartiteGraph, _bits,
                         _popcount, falling_factorial, remove_vertices)


class BudgetExceeded(Exception):
    """Raised when a search exceeds its node or time budget."""


class SearchBudget:
    """Deterministic node cap and/or wall-clock deadline for searches."""

    def __init__(self, node_cap: Optional[int] = None,
                 time_limit: Optional[float] = None):
        self.node_cap = node_cap
        self.deadline = time.monotonic() + time_limit if time_limit else None
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.node_cap is not None and self.nodes > self.node_cap:
            raise BudgetExceeded(f"node cap {self.node_cap} exceeded")
        if self.deadline is not None and self.nodes % 256 == 0 \
                and time.monotonic() > self.deadline:
            raise BudgetExceeded("time limit exceeded")


@dataclass(frozen=True)
class EmbeddingCount:
    value: int
    kind: str

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("counts are non-negative")


@dataclass(frozen=True)
class TriangleDistribution:
    """Law of the triangle at a fixed vertex under a uniform embedding.

    Keys are edge pairs from the triangle link, plus None for the event
    that the vertex stays isolated.  Probabilities are exact rationals.
    """

    vertex: int
    probs: dict

    def __post_init__(self):
        if sum(self.probs.values()) != 1:
            raise ValueError("probabilities must sum to one exactly")

    def isolation_probability(self) -> Fraction:
        return self.probs.get(None, Fraction(0))

    def conditional_on_covered(self) -> dict:
        """Distribution over link edges given the vertex is in a triangle."""
        mass = 1 - self.isolation_probability()
        if mass == 0:
            raise ValueError("vertex is isolated with probability 1")
        return {e: p / mass for e, p in self.probs.items() if e is not None}

    def entropy(self) -> float:
        """Shannon entropy of the full distribution, in nats."""
        from .diagnostics import shannon_entropy

        return shannon_entropy({k: float(v) for k, v in self.probs.items()})


def _triangle_pairs(adj, v: int, alive: int) -> list[tuple[int, int]]:
    """Edges (a, b), a < b, alive, forming a triangle with v."""
    out = []
    nb = adj[v] & alive
    for a in _bits(nb):
        for b in _bits(nb & adj[a] & ~((1 << (a + 1)) - 1)):
            out.append((a, b))
    return out


def find_triangle_factor(g: Graph, budget: Optional[SearchBudget] = None
                         ) -> Optional[TriangleMatching]:
    """Exact search for a triangle factor; None when there is none.

    Branches on the uncovered vertex in the fewest remaining triangles
    (lowest id on ties) and scans its triangles lexicographically, so the
    returned witness is deterministic.
    """
    if g.n % 3:
        return None
    if g.n == 0:
        return TriangleMatching.of([])
    adj = g.adj
    failed: set[int] = set()
    chosen: list[tuple[int, int, int]] = []

    def solve(alive: int) -> bool:
        if budget is not None:
            budget.tick()
        if alive == 0:
            return True
        if alive in failed:
            return False
        best_v, best_pairs = -1, None
        for v in _bits(alive):
            pairs = _triangle_pairs(adj, v, alive)
            if not pairs:
                failed.add(alive)
                return False
            if best_pairs is None or len(pairs) < len(best_pairs):
                best_v, best_pairs = v, pairs
                if len(pairs) == 1:
                    break
        for a, b in best_pairs:
            chosen.append((best_v, a, b))
            if solve(alive & ~((1 << best_v) | (1 << a) | (1 << b))):
                return True
            chosen.pop()
        if len(failed) < 2_000_000:
            failed.add(alive)
        return False

    if solve(g.full_mask()):
        return TriangleMatching.of(chosen, host=g)
    return None


def count_triangle_factors(g: Graph, budget: Optional[SearchBudget] = None
                           ) -> EmbeddingCount:
    """Number of unordered triangle factors, exactly."""
    if g.n % 3:
        return EmbeddingCount(0, "factor-count")
    adj = g.adj
    memo: dict[int, int] = {}

    def count(alive: int) -> int:
        if alive == 0:
            return 1
        cached = memo.get(alive)
        if cached is not None:
            return cached
        if budget is not None:
            budget.tick()
        v = (alive & -alive).bit_length() - 1  # lowest uncovered vertex
        total = 0
        for a, b in _triangle_pairs(adj, v, alive):
            total += count(alive & ~((1 << v) | (1 << a) | (1 << b)))
        memo[alive] = total
        return total

    return EmbeddingCount(count(g.full_mask()), "factor-count")


def _psi_unordered(g: TripartiteGraph, t: int, excluded: int) -> int:
    """Unordered count of t disjoint transversal triangles avoiding a mask.

    Layered DP over the first part: each of its vertices is either skipped
    or matched to an available edge of its triangle link.
    """
    if t == 0:
        return 1
    adj = g.adj
    p2_mask = g.part_mask(1) & ~excluded
    p3_mask = g.part_mask(2) & ~excluded
    states: dict[tuple[int, int], int] = {(0, 0): 1}
    for v in g.part(0):
        if excluded >> v & 1:
            continue
        nb2 = adj[v] & p2_mask
        nb3 = adj[v] & p3_mask
        pairs = [(w2, w3) for w2 in _bits(nb2) for w3 in _bits(adj[w2] & nb3)]
        if not pairs:
            continue
        new = dict(states)
        for (m2, m3), ways in states.items():
            if _popcount(m2) >= t:
                continue
            for w2, w3 in pairs:
                b2, b3 = 1 << w2, 1 << w3
                if m2 & b2 or m3 & b3:
                    continue
                key = (m2 | b2, m3 | b3)
                new[key] = new.get(key, 0) + ways
        states = new
    return sum(ways for (m2, _), ways in states.items() if _popcount(m2) == t)


def _as_mask(g: Graph, vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        g._check_vertex(v)
        m |= 1 << v
    return m


def count_embeddings(g: TripartiteGraph, t: int,
                     avoid: Iterable[int] = (),
                     root: Optional[int] = None) -> EmbeddingCount:
    """|Psi^t| of labelled embeddings of t disjoint triangles.

    ``avoid`` lists vertices forced isolated; with ``root`` given (a part-1
    vertex) the count is of embeddings whose first triangle uses the root
    as its part-1 vertex.
    """
    if not isinstance(g, TripartiteGraph):
        raise TypeError("embedding counts need a tripartite host")
    if not 0 <= t <= min(g.part_sizes):
        raise ValueError(f"t={t} out of range for parts {g.part_sizes}")
    avoid_mask = _as_mask(g, avoid)
    if root is None:
        value = falling_factorial(t, t) * _psi_unordered(g, t, avoid_mask)
        return EmbeddingCount(value, "avoiding" if avoid_mask else "total")
    g._check_vertex(root)
    if g.part_of(root) != 0:
        raise ValueError("root must lie in the first part")
    if avoid_mask >> root & 1:
        raise ValueError("root cannot be avoided")
    if t == 0:
        return EmbeddingCount(0, "rooted")
    total = 0
    alive = g.full_mask() & ~avoid_mask
    for a, b in _triangle_pairs(g.adj, root, alive & ~(1 << root)):
        rest = avoid_mask | (1 << root) | (1 << a) | (1 << b)
        total += falling_factorial(t - 1, t - 1) * _psi_unordered(g, t - 1, rest)
    return EmbeddingCount(total, "rooted")


def triangle_distribution(g: TripartiteGraph, t: int, avoid: Iterable[int],
                          v: int) -> TriangleDistribution:
    """Exact law of the triangle containing v (or None for isolation)
    under a uniform random embedding avoiding the given vertices."""
    avoid = tuple(avoid)
    if v in avoid:
        raise ValueError("v must not be avoided")
    total = count_embeddings(g, t, avoid).value
    if total == 0:
        raise ValueError("no embeddings to draw from")
    avoid_mask = _as_mask(g, avoid)
    probs: dict = {}
    iso = falling_factorial(t, t) * _psi_unordered(g, t, avoid_mask | (1 << v))
    probs[None] = Fraction(iso, total)
    if t > 0:
        alive = g.full_mask() & ~avoid_mask & ~(1 << v)
        for a, b in _triangle_pairs(g.adj, v, alive):
            rest = avoid_mask | (1 << v) | (1 << a) | (1 << b)
            ways = t * falling_factorial(t - 1, t - 1) \
                * _psi_unordered(g, t - 1, rest)
            if ways:
                probs[(a, b)] = Fraction(ways, total)
    return TriangleDistribution(v, probs)


def _cliques_at(adj, v: int, alive: int, k: int) -> list[tuple[int, ...]]:
    """k-cliques containing v within the alive mask, lexicographic."""
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], candidates: int) -> None:
        if len(prefix) == k - 1:
            out.append(tuple(sorted(prefix + [v])))
            return
        for w in _bits(candidates):
            extend(prefix + [w], candidates & adj[w] & ~((1 << (w + 1)) - 1))

    extend([], adj[v] & alive)
    return out


def max_clique_matching(g: Graph, k: int,
                        budget: Optional[SearchBudget] = None
                        ) -> tuple[int, list[tuple[int, ...]]]:
    """Maximum number of vertex-disjoint k-cliques, with a witness."""
    if k < 2:
        raise ValueError("k must be at least 2")
    adj = g.adj
    memo: dict[int, tuple[int, Optional[tuple[int, ...]]]] = {}

    def best(alive: int) -> tuple[int, Optional[tuple[int, ...]]]:
        if _popcount(alive) < k:
            return 0, None
        hit = memo.get(alive)
        if hit is not None:
            return hit
        if budget is not None:
            budget.tick()
        v = (alive & -alive).bit_length() - 1
        # skipping v entirely is always an option
        score, choice = best(alive & ~(1 << v))[0], None
        for clique in _cliques_at(adj, v, alive & ~(1 << v), k):
            mask = alive
            for w in clique:
                mask &= ~(1 << w)
            sub = best(mask)[0] + 1
            if sub > score:
                score, choice = sub, clique
        memo[alive] = (score, choice)
        return score, choice

    size, _ = best(g.full_mask())
    # replay the memoised choices for the witness
    witness: list[tuple[int, ...]] = []
    alive = g.full_mask()
    while _popcount(alive) >= k:
        score, choice = best(alive)
        if choice is None:
            v = (alive & -alive).bit_length() - 1
            alive &= ~(1 << v)
            continue
        witness.append(choice)
        for w in choice:
            alive &= ~(1 << w)
    assert len(witness) == size
    return size, witness


def find_clique_factor(g: Graph, k: int,
                       budget: Optional[SearchBudget] = None
                       ) -> Optional[list[tuple[int, ...]]]:
    """A K_k-factor if one exists, else None; exact backtracking."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if g.n % k:
        return None
    if g.n == 0:
        return []
    adj = g.adj
    failed: set[int] = set()
    chosen: list[tuple[int, ...]] = []

    def solve(alive: int) -> bool:
        if budget is not None:
            budget.tick()
        if alive == 0:
            return True
        if alive in failed:
            return False
        best_v, best_cliques = -1, None
        for v in _bits(alive):
            cliques = _cliques_at(adj, v, alive & ~(1 << v), k)
            if not cliques:
                failed.add(alive)
                return False
            if best_cliques is None or len(cliques) < len(best_cliques):
                best_v, best_cliques = v, cliques
                if len(cliques) == 1:
                    break
        for clique in best_cliques:
            mask = alive
            for w in clique:
                mask &= ~(1 << w)
            chosen.append(clique)
            if solve(mask):
                return True
            chosen.pop()
        if len(failed) < 2_000_000:
            failed.add(alive)
        return False

    if solve(g.full_mask()):
        return list(chosen)
    return None
