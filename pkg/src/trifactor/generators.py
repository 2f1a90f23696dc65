"""Benchmark graph families: deterministic and seeded random constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph_core import Graph, TripartiteGraph
from .rng import STREAM_GENERATE, edge_key, mix_keys, uniform_array

FAMILIES = ("complete_tripartite", "hsz_extremal", "nash_williams", "gnq",
            "superreg_tripartite", "planted_sparse")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    k: int = 3
    d: float = 1.0
    q: float = 1.0
    tau: float = 0.0
    mode: str = "two"
    seed: int = 0
    extra_sizes: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")


def build(spec: FamilySpec) -> Graph:
    """Materialise a FamilySpec."""
    f = spec.family
    if f == "complete_tripartite":
        sizes = spec.extra_sizes if spec.extra_sizes else (spec.n,) * 3
        return complete_tripartite(*sizes)
    if f == "hsz_extremal":
        return hsz_extremal(spec.n, spec.k)
    if f == "nash_williams":
        return nash_williams_tripartite(spec.n)
    if f == "gnq":
        return gnq(spec.n, spec.q, spec.seed)
    if f == "superreg_tripartite":
        return superreg_tripartite(spec.n, spec.d, spec.seed)
    return planted_sparse(spec.n, spec.mode, spec.tau, spec.seed)


def complete_tripartite(n1: int, n2: int, n3: int) -> TripartiteGraph:
    if min(n1, n2, n3) < 0:
        raise ValueError("part sizes must be non-negative")
    g = TripartiteGraph((n1, n2, n3))
    edges = []
    for i in range(3):
        for j in range(i + 1, 3):
            for u in g.part(i):
                for v in g.part(j):
                    edges.append((u, v))
    return TripartiteGraph((n1, n2, n3), edges)


def hsz_extremal(n: int, k: int) -> Graph:
    """Complete graph with all edges inside a set of size n/k + 1 removed.

    The removed set is the lowest n/k + 1 ids.  This is the tight example
    for clique factors: delta = (k-1)n/k - 1 and alpha = n/k + 1.
    """
    if k < 2 or n < k:
        raise ValueError("need k >= 2 and n >= k")
    if n % k:
        raise ValueError(f"k={k} must divide n={n}")
    hole = n // k + 1
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if not (u < hole and v < hole)]
    return Graph(n, edges)


def nash_williams_tripartite(n: int) -> Graph:
    """Complete tripartite on parts of size m+2, m-1, m-1 plus a cycle on
    the large part, where m = n/3.  The graph is 3-full: delta = 2n/3,
    attained on the large part."""
    if n % 3 or n < 12:
        raise ValueError("need n in 3N with n >= 12")
    m = n // 3
    x = list(range(m + 2))
    y = list(range(m + 2, 2 * m + 1))
    z = list(range(2 * m + 1, n))
    edges = [(a, b) for part1, part2 in ((x, y), (x, z), (y, z))
             for a in part1 for b in part2]
    cycle = [(x[i], x[(i + 1) % len(x)]) for i in range(len(x))]
    edges += [(min(a, b), max(a, b)) for a, b in cycle]
    return Graph(n, edges)


def _threshold_edges(all_pairs: list[tuple[int, int]], prob: float,
                     seed: int, tag: int) -> list[tuple[int, int]]:
    if not all_pairs:
        return []
    keys = np.array([edge_key(u, v) for u, v in all_pairs], dtype=np.uint64)
    base = mix_keys(seed, STREAM_GENERATE, tag)
    t = uniform_array(base, keys)
    return [e for e, u in zip(all_pairs, t) if u < prob]


def gnq(n: int, q: float, seed: int) -> Graph:
    """Binomial random graph G(n, q), seeded."""
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0,1]")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph(n, _threshold_edges(pairs, q, seed, 0))


def superreg_tripartite(n: int, d: float, seed: int) -> TripartiteGraph:
    """Random balanced tripartite graph with i.i.d. cross edges at density d.

    The super-regularity of the output is a property to verify (via the
    regularity checks), not a certificate of this construction.
    """
    if not 0.0 < d <= 1.0:
        raise ValueError("d must lie in (0,1]")
    g = TripartiteGraph((n, n, n))
    pairs = [(u, v) for i in range(3) for j in range(i + 1, 3)
             for u in g.part(i) for v in g.part(j)]
    return TripartiteGraph((n, n, n), _threshold_edges(pairs, d, seed, 1))


def planted_sparse(n: int, mode: str, tau: float, seed: int) -> Graph:
    """A dense graph with delta >= 2n/3 and one or two planted sparse sets.

    mode="two": independent-ish blocks S1, S2 of size floor((1/3-tau)n)
    with complete cross edges; the remainder R is independent plus a
    circulant just thick enough to keep delta >= 2n/3.  mode="one": one
    such block S whose complement is a clique.  Noise inside each planted
    block flips non-edges on with probability tau/2, resampled until the
    induced maximum degree stays at most tau*n.
    """
    if n % 3:
        raise ValueError("need n in 3N")
    if mode not in ("one", "two"):
        raise ValueError("mode must be 'one' or 'two'")
    if not 0.0 <= tau < 1.0 / 3.0:
        raise ValueError("tau must lie in [0, 1/3)")
    s = int((1.0 / 3.0 - tau) * n + 1e-9)
    if s < 1:
        raise ValueError("tau leaves no room for a planted set")

    if mode == "one":
        block_s = list(range(s))
        rest = list(range(s, n))
        edges = [(u, v) for u in block_s for v in rest]
        edges += [(u, v) for i, u in enumerate(rest) for v in rest[i + 1:]]
        edges += _planted_noise(n, [block_s], tau, seed)
        return Graph(n, edges)

    s1 = list(range(s))
    s2 = list(range(s, 2 * s))
    rest = list(range(2 * s, n))
    edges = [(u, v) for u in s1 for v in s2]
    edges += [(u, v) for u in s1 for v in rest]
    edges += [(u, v) for u in s2 for v in rest]
    # pad R with a circulant so its vertices reach degree 2n/3
    need = max(0, 2 * n // 3 - (n - len(rest)))
    half = (need + 1) // 2
    if 2 * half > len(rest) - 1 and need > 0:
        raise ValueError("tau too large: remainder cannot reach delta >= 2n/3")
    r = len(rest)
    circ = set()
    for idx in range(r):
        for off in range(1, half + 1):
            a, b = rest[idx], rest[(idx + off) % r]
            circ.add((min(a, b), max(a, b)))
    edges += sorted(circ)
    edges += _planted_noise(n, [s1, s2], tau, seed)
    return Graph(n, edges)


def _planted_noise(n: int, blocks: list[list[int]], tau: float, seed: int
                   ) -> list[tuple[int, int]]:
    """Intra-block noise at rate tau/2, rejected until Delta <= tau*n."""
    if tau == 0.0:
        return []
    out: list[tuple[int, int]] = []
    for bi, block in enumerate(blocks):
        pairs = [(u, v) for i, u in enumerate(block) for v in block[i + 1:]]
        for attempt in range(1000):
            chosen = _threshold_edges(pairs, tau / 2.0,
                                      mix_keys(seed, bi, attempt), 2)
            deg: dict[int, int] = {}
            for u, v in chosen:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            if not deg or max(deg.values()) <= tau * n:
                out += chosen
                break
        else:
            raise ValueError("noise rejection failed; tau too aggressive")
    return out
