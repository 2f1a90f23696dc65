"""Immutable graphs over dense 0-based vertex ids.

Adjacency is stored as one Python int bitmask per vertex, so neighbourhood
intersections are single `&` operations.  Graphs are never mutated after
construction; removal returns a new graph together with a remap table from
new ids back to the ids of the original construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

ALPHA_EXACT_CAP = 24


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(mask: int):
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph; no self-loops, ids dense in 0..n-1."""

    __slots__ = ("n", "adj", "source_ids")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 source_ids: Optional[tuple[int, ...]] = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        self.source_ids = source_ids if source_ids is not None else tuple(range(n))

    # -- basic queries -------------------------------------------------

    def vertices(self) -> range:
        return range(self.n)

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return _popcount(self.adj[v])

    def neighbors(self, v: int) -> set[int]:
        self._check_vertex(v)
        return set(_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        """All edges (u, v) with u < v, sorted lexicographically."""
        out = []
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1)
            for b in _bits(rest):
                out.append((u, u + 1 + b))
        return out

    def edge_count(self) -> int:
        return sum(_popcount(a) for a in self.adj) // 2

    def adjacency_matrix(self):
        """Dense boolean numpy matrix; for bulk counting only."""
        import numpy as np

        m = np.zeros((self.n, self.n), dtype=bool)
        for u in range(self.n):
            for v in _bits(self.adj[u]):
                m[u, v] = True
        return m

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def _mask_of(self, vs: Iterable[int]) -> int:
        m = 0
        for v in vs:
            self._check_vertex(v)
            m |= 1 << v
        return m

    def __eq__(self, other) -> bool:
        return (type(other) is type(self) and self.n == other.n
                and self.adj == other.adj and self._parts_key() == other._parts_key())

    def __hash__(self):
        return hash((self.n, self.adj, self._parts_key()))

    def _parts_key(self):
        return None

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, m={self.edge_count()})"


class TripartiteGraph(Graph):
    """Graph on three consecutive id intervals with no intra-part edges."""

    __slots__ = ("part_sizes",)

    def __init__(self, part_sizes: tuple[int, int, int],
                 edges: Iterable[tuple[int, int]] = (),
                 source_ids: Optional[tuple[int, ...]] = None):
        n1, n2, n3 = part_sizes
        super().__init__(n1 + n2 + n3, edges, source_ids)
        self.part_sizes = (n1, n2, n3)
        for u, v in self.edges():
            if self.part_of(u) == self.part_of(v):
                raise ValueError(f"intra-part edge ({u},{v})")

    def part_of(self, v: int) -> int:
        """Part index in {0, 1, 2} of a vertex."""
        n1, n2, _ = self.part_sizes
        if v < n1:
            return 0
        return 1 if v < n1 + n2 else 2

    def part(self, i: int) -> range:
        n1, n2, n3 = self.part_sizes
        starts = (0, n1, n1 + n2)
        sizes = (n1, n2, n3)
        return range(starts[i], starts[i] + sizes[i])

    def part_mask(self, i: int) -> int:
        r = self.part(i)
        return ((1 << len(r)) - 1) << r.start

    def is_balanced(self) -> bool:
        return len(set(self.part_sizes)) == 1

    def _parts_key(self):
        return self.part_sizes


@dataclass(frozen=True)
class TriangleMatching:
    """A set of pairwise vertex-disjoint triangles."""

    triangles: frozenset[tuple[int, int, int]]

    @staticmethod
    def of(triangles: Iterable[Sequence[int]], host: Optional[Graph] = None
           ) -> "TriangleMatching":
        tris = frozenset(tuple(sorted(t)) for t in triangles)
        seen: set[int] = set()
        for t in tris:
            if len(set(t)) != 3:
                raise ValueError(f"degenerate triangle {t}")
            if seen.intersection(t):
                raise ValueError("triangles are not vertex-disjoint")
            seen.update(t)
            if host is not None:
                for a, b in combinations(t, 2):
                    if not host.has_edge(a, b):
                        raise ValueError(f"{t} is not a triangle in the host")
        return TriangleMatching(tris)

    @property
    def covered(self) -> set[int]:
        return {v for t in self.triangles for v in t}

    @property
    def size(self) -> int:
        return len(self.triangles)

    def sorted_triangles(self) -> list[tuple[int, int, int]]:
        return sorted(self.triangles)


@dataclass(frozen=True)
class GraphStats:
    min_degree: int
    independence_number: int
    independence_exact: bool


def check_vertex_tuple(g: TripartiteGraph, entries: Sequence[int]) -> tuple[int, ...]:
    """Validate an ordered tuple with entry i drawn from part i."""
    t = tuple(entries)
    if len(t) > 3:
        raise ValueError("vertex tuple has length at most 3")
    for i, v in enumerate(t):
        g._check_vertex(v)
        if g.part_of(v) != i:
            raise ValueError(f"entry {i} of tuple must lie in part {i + 1}")
    return t


# -- operations ---------------------------------------------------------


def neighborhood(g: Graph, s: Iterable[int], u: Iterable[int]) -> set[int]:
    """Common neighbourhood of ``s`` restricted to ``u``; N(empty) = V(g)."""
    mask = g.full_mask()
    for v in s:
        g._check_vertex(v)
        mask &= g.adj[v]
    mask &= g._mask_of(u)
    return set(_bits(mask))


def enumerate_cliques(g: Graph, k: int, containing: Optional[int] = None
                      ) -> list[tuple[int, ...]]:
    """All k-cliques as sorted tuples, each reported once.

    With ``containing`` set, restricts to cliques through that vertex.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], candidates: int) -> None:
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        # only extend upwards on the last free slot chain
        for v in _bits(candidates):
            extend(prefix + [v], candidates & g.adj[v] & ~((1 << (v + 1)) - 1))

    if containing is None:
        extend([], g.full_mask())
    else:
        g._check_vertex(containing)
        base = g.adj[containing]

        def extend_rooted(prefix: list[int], candidates: int) -> None:
            if len(prefix) == k - 1:
                out.append(tuple(sorted(prefix + [containing])))
                return
            for v in _bits(candidates):
                extend_rooted(prefix + [v],
                              candidates & g.adj[v] & ~((1 << (v + 1)) - 1))

        extend_rooted([], base)
        out.sort()
    return out


def triangle_link(g: Graph, v: int) -> set[tuple[int, int]]:
    """tr_v(g): the edges whose endpoints are both adjacent to v."""
    g._check_vertex(v)
    nb = g.adj[v]
    out = set()
    for a in _bits(nb):
        for b in _bits(nb & g.adj[a] & ~((1 << (a + 1)) - 1)):
            out.add((a, b))
    return out


def remove_vertices(g: Graph, drop: Iterable[int]) -> Graph:
    """Induced subgraph with ``drop`` removed; absent ids are ignored.

    The result's ``source_ids`` maps new ids to the originals of ``g``.
    """
    dropset = {v for v in drop if 0 <= v < g.n}
    keep = [v for v in range(g.n) if v not in dropset]
    remap = {v: i for i, v in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u, v in g.edges()
             if u in remap and v in remap]
    src = tuple(g.source_ids[v] for v in keep)
    if isinstance(g, TripartiteGraph):
        sizes = [0, 0, 0]
        for v in keep:
            sizes[g.part_of(v)] += 1
        return TripartiteGraph((sizes[0], sizes[1], sizes[2]), edges, src)
    return Graph(len(keep), edges, src)


def falling_factorial(n: int, t: int) -> int:
    """n!_t = n(n-1)...(n-t+1), with n!_0 = 1."""
    if n < 0 or t < 0:
        raise ValueError("arguments must be non-negative")
    if t > n:
        raise ValueError(f"t={t} exceeds n={n}")
    out = 1
    for i in range(t):
        out *= n - i
    return out


def _max_independent_set(g: Graph) -> int:
    """Exact alpha(g) by branch and bound on candidate bitmasks."""
    adj = g.adj
    best = 0

    def bb(candidates: int, size: int) -> None:
        nonlocal best
        while candidates:
            if size + _popcount(candidates) <= best:
                return
            # vertices isolated within the candidates always join
            forced = 0
            for v in _bits(candidates):
                if adj[v] & candidates == 0:
                    forced |= 1 << v
            if forced:
                size += _popcount(forced)
                candidates &= ~forced
                if not candidates:
                    break
                continue
            # branch on the candidate of maximum residual degree
            v = max(_bits(candidates), key=lambda w: (_popcount(adj[w] & candidates), -w))
            # include v ...
            bb((candidates & ~adj[v]) & ~(1 << v), size + 1)
            # ... or exclude it
            candidates &= ~(1 << v)
        best = max(best, size)

    bb(g.full_mask(), 0)
    return best


def _greedy_independent_set(g: Graph) -> int:
    remaining = g.full_mask()
    size = 0
    while remaining:
        v = min(_bits(remaining), key=lambda w: (_popcount(g.adj[w] & remaining), w))
        size += 1
        remaining &= ~(g.adj[v] | (1 << v))
    return size


def graph_stats(g: Graph, alpha_cap: int = ALPHA_EXACT_CAP) -> GraphStats:
    """Exact minimum degree; alpha exact up to ``alpha_cap`` vertices.

    Beyond the cap a greedy lower bound is returned, flagged inexact.
    """
    if g.n == 0:
        return GraphStats(0, 0, True)
    delta = min(g.degree(v) for v in range(g.n))
    if g.n <= alpha_cap:
        return GraphStats(delta, _max_independent_set(g), True)
    return GraphStats(delta, _greedy_independent_set(g), False)


def find_sparse_set(g: Graph, size_floor: float, degree_cap: float
                    ) -> Optional[set[int]]:
    """Greedy max-degree peeling witness for a large sparse set.

    Deletes the vertex of maximum induced degree (lowest id on ties) until
    the induced maximum degree is at most ``degree_cap * n``; returns the
    surviving set if it still has at least ``size_floor * n`` vertices.
    A successful return is a sound witness only.
    """
    if not (0 < size_floor < 1 and 0 < degree_cap < 1):
        raise ValueError("size_floor and degree_cap must lie in (0,1)")
    n = g.n
    cap = degree_cap * n
    floor = size_floor * n
    alive = g.full_mask()
    count = n
    while count:
        degs = [(v, _popcount(g.adj[v] & alive)) for v in _bits(alive)]
        vmax, dmax = max(degs, key=lambda vd: (vd[1], -vd[0]))
        if dmax <= cap:
            break
        alive &= ~(1 << vmax)
        count -= 1
    if count >= floor and count > 0:
        return set(_bits(alive))
    return None


# -- text format ---------------------------------------------------------


def format_graph(g: Graph) -> str:
    """Serialise: header line then one `u v` per edge, lexicographic."""
    lines = []
    if isinstance(g, TripartiteGraph):
        n1, n2, n3 = g.part_sizes
        lines.append(f"tripartite {n1} {n2} {n3} {g.edge_count()}")
    else:
        lines.append(f"{g.n} {g.edge_count()}")
    for u, v in g.edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if head[0] == "tripartite":
        if len(head) != 5:
            raise ValueError("tripartite header needs: tripartite n1 n2 n3 m")
        n1, n2, n3, m = (int(x) for x in head[1:])
        edges = [_parse_edge(ln) for ln in lines[1:]]
        if len(edges) != m:
            raise ValueError(f"header claims {m} edges, found {len(edges)}")
        return TripartiteGraph((n1, n2, n3), edges)
    if len(head) != 2:
        raise ValueError("header needs: n m")
    n, m = int(head[0]), int(head[1])
    edges = [_parse_edge(ln) for ln in lines[1:]]
    if len(edges) != m:
        raise ValueError(f"header claims {m} edges, found {len(edges)}")
    return Graph(n, edges)


def _parse_edge(line: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise ValueError(f"bad edge line: {line!r}")
    return int(parts[0]), int(parts[1])


def read_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))
