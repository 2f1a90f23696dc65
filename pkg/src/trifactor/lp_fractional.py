"""Fractional clique-factor packing LP, covering dual, and integer rounding.

The solver is a self-contained dense two-phase tableau simplex with
Bland's anti-cycling rule over float64; instances here are tiny (vertex x
clique incidence at desk scale), so robustness beats speed.  The integer
weighting routine performs the three-step rounding-and-correction scheme:
an offset fractional solve, a largest-remainder rounding that hits the
divisibility target, and a surplus/deficit transfer loop that moves one
unit at a time through shared (k-1)-cliques (or even walks when k = 2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .graph_core import Graph, GraphStats, enumerate_cliques, graph_stats

SIMPLEX_TOL = 1e-9
CLIQUE_CAP = 200_000


class CliqueCapExceeded(Exception):
    pass


class CorrectionStuck(Exception):
    """A transfer step found no clique or even walk for the stuck pair."""

    def __init__(self, u: int, v: int, reason: str):
        super().__init__(f"stuck pair ({u},{v}): {reason}")
        self.pair = (u, v)


@dataclass(frozen=True)
class LPResult:
    status: str                      # "optimal" | "infeasible-demand"
    value: float
    weighting: Optional[dict] = None  # clique tuple -> weight
    cover: Optional[dict] = None      # vertex -> weight
    duality_gap: Optional[float] = None
    tight: Optional[bool] = None      # value == sum(demand)/k within tol


@dataclass
class IntegerWeighting:
    weights: dict                    # clique tuple -> non-negative int
    per_vertex: dict                 # vertex -> achieved integer sum
    steps: list = field(default_factory=list)  # (u, v, discrepancy after)
    initial_discrepancy: int = 0


# -- simplex ------------------------------------------------------------


def simplex_solve(c: np.ndarray, a: np.ndarray, b: np.ndarray,
                  senses: Sequence[str], maximize: bool = True
                  ) -> tuple[float, np.ndarray, np.ndarray]:
    """max (or min) c.x subject to A x <sense> b, x >= 0.

    Returns (objective, x, y) where y holds the signed duals by row.
    Raises ValueError on infeasible or unbounded input.
    """
    m, n = a.shape
    a = a.astype(float).copy()
    b = b.astype(float).copy()
    obj = c.astype(float).copy() if maximize else -c.astype(float)

    for i in range(m):
        if b[i] < 0:
            a[i] *= -1.0
            b[i] *= -1.0
            senses = list(senses)
            senses[i] = {"<=": ">=", ">=": "<=", "=": "="}[senses[i]]

    slack_cols, art_cols = [], []
    cols: list[np.ndarray] = []
    for i, s in enumerate(senses):
        if s == "<=":
            e = np.zeros(m)
            e[i] = 1.0
            slack_cols.append(n + len(cols))
            cols.append(e)
        elif s == ">=":
            e = np.zeros(m)
            e[i] = -1.0
            cols.append(e)
        elif s != "=":
            raise ValueError(f"bad sense {s!r}")
    for i, s in enumerate(senses):
        if s in (">=", "="):
            e = np.zeros(m)
            e[i] = 1.0
            art_cols.append(n + len(cols))
            cols.append(e)

    tab = np.hstack([a] + ([np.column_stack(cols)] if cols else [])
                    + [b.reshape(-1, 1)])
    ncols = tab.shape[1] - 1
    art_set = set(art_cols)

    basis = [-1] * m
    art_iter = iter(art_cols)
    for i, s in enumerate(senses):
        if s == "<=":
            basis[i] = slack_cols[len([j for j in range(i) if senses[j] == "<="])]
        else:
            basis[i] = next(art_iter)

    def run(costs: np.ndarray) -> None:
        for _ in range(200_000):
            # reduced costs via the current basis
            cb = costs[basis]
            z = cb @ tab[:, :ncols]
            red = costs[:ncols] - z
            red[np.abs(red) < SIMPLEX_TOL] = 0.0
            enter = -1
            for j in range(ncols):  # Bland: lowest index with positive cost
                if red[j] > 0:
                    enter = j
                    break
            if enter < 0:
                return
            col = tab[:, enter]
            ratios = [(tab[i, ncols] / col[i], basis[i], i)
                      for i in range(m) if col[i] > SIMPLEX_TOL]
            if not ratios:
                raise ValueError("LP is unbounded")
            _, _, leave = min(ratios)
            pivot = tab[leave, enter]
            tab[leave] /= pivot
            for i in range(m):
                if i != leave and abs(tab[i, enter]) > 0:
                    tab[i] -= tab[i, enter] * tab[leave]
            basis[leave] = enter
        raise RuntimeError("simplex iteration cap hit")

    if art_cols:
        phase1 = np.zeros(ncols)
        for j in art_cols:
            phase1[j] = -1.0
        run(phase1)
        art_value = sum(tab[i, ncols] for i in range(m) if basis[i] in art_set)
        if art_value > 1e-7:
            raise ValueError("LP is infeasible")
        # drive leftover degenerate artificials out of the basis; rows that
        # resist are redundant and dropped
        drop_rows = []
        for i in range(m):
            if basis[i] in art_set:
                for j in range(ncols):
                    if j not in art_set and abs(tab[i, j]) > SIMPLEX_TOL:
                        pivot = tab[i, j]
                        tab[i] /= pivot
                        for r in range(m):
                            if r != i and abs(tab[r, j]) > 0:
                                tab[r] -= tab[r, j] * tab[i]
                        basis[i] = j
                        break
                else:
                    drop_rows.append(i)
        if drop_rows:
            keep = [i for i in range(m) if i not in drop_rows]
            tab = tab[keep]
            basis = [basis[i] for i in keep]
            m = len(keep)
        first_art = min(art_cols)
        tab = np.hstack([tab[:, :first_art], tab[:, -1:]])
        ncols = first_art

    costs2 = np.zeros(ncols)
    costs2[:n] = obj
    run(costs2)

    x = np.zeros(n)
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[i, ncols]
    value = float(obj @ x)
    cb = costs2[basis]
    y = cb @ tab[:, :ncols]  # multipliers against structural columns
    duals = np.zeros(len(senses))
    col_idx = n
    for i, s in enumerate(senses):
        if s == "<=":
            duals[i] = y[col_idx]
            col_idx += 1
        elif s == ">=":
            duals[i] = -y[col_idx]
            col_idx += 1
    return (value if maximize else -value), x, duals


# -- packing / covering --------------------------------------------------


def _clique_incidence(g: Graph, k: int) -> tuple[list[tuple[int, ...]], np.ndarray]:
    cliques = enumerate_cliques(g, k)
    if len(cliques) > CLIQUE_CAP:
        raise CliqueCapExceeded(f"{len(cliques)} cliques exceed cap {CLIQUE_CAP}")
    a = np.zeros((g.n, len(cliques)))
    for j, q in enumerate(cliques):
        for v in q:
            a[v, j] = 1.0
    return cliques, a


def solve_packing_lp(g: Graph, k: int,
                     demand: Optional[dict] = None) -> LPResult:
    """max sum(w) with per-vertex clique weight at most demand (default 1)."""
    dem = np.ones(g.n)
    if demand is not None:
        for v, val in demand.items():
            g._check_vertex(v)
            dem[v] = float(val)
    if (dem < 0).any():
        return LPResult("infeasible-demand", 0.0)
    cliques, a = _clique_incidence(g, k)
    if not cliques:
        return LPResult("optimal", 0.0, weighting={}, cover={},
                        duality_gap=0.0, tight=dem.sum() == 0)
    value, x, duals = simplex_solve(np.ones(len(cliques)), a, dem,
                                    ["<="] * g.n, maximize=True)
    weighting = {q: float(w) for q, w in zip(cliques, x) if w > SIMPLEX_TOL}
    cover = {v: float(duals[v]) for v in range(g.n)}
    gap = abs(value - float(duals @ dem))
    tight = abs(value - dem.sum() / k) <= 1e-6
    return LPResult("optimal", value, weighting=weighting, cover=cover,
                    duality_gap=gap, tight=tight)


def solve_covering_lp(g: Graph, k: int) -> LPResult:
    """min sum(c) with every k-clique covered to total at least 1.

    Solved directly as its own LP (not read off the packing tableau), so
    agreement with solve_packing_lp is a genuine duality check.
    """
    cliques, a = _clique_incidence(g, k)
    if not cliques:
        return LPResult("optimal", 0.0, weighting={}, cover={},
                        duality_gap=0.0, tight=None)
    value, x, duals = simplex_solve(np.ones(g.n), a.T,
                                    np.ones(len(cliques)),
                                    [">="] * len(cliques), maximize=False)
    cover = {v: float(w) for v, w in enumerate(x)}
    weighting = {q: float(duals[j]) for j, q in enumerate(cliques)
                 if abs(duals[j]) > SIMPLEX_TOL}
    gap = abs(value - float(sum(duals)))
    return LPResult("optimal", value, weighting=weighting, cover=cover,
                    duality_gap=gap)


def rescale_cover(cover: Sequence[float], k: int) -> list[float]:
    """Pull the minimum cover weight to zero while preserving feasibility.

    Maps c to 1/k + mu*(c - 1/k) with mu chosen so the smallest weight
    becomes 0; requires that weight to be below 1/k.  Clique sums map as
    s -> 1 + mu*(s - 1), so feasibility is preserved, and the objective
    strictly decreases when the total was below n/k.
    """
    cmin = min(cover)
    if not 0 <= cmin < 1.0 / k:
        raise ValueError("minimum weight must lie in [0, 1/k)")
    mu = (1.0 / k) / (1.0 / k - cmin)
    return [1.0 / k + mu * (c - 1.0 / k) for c in cover]


# -- even walks ----------------------------------------------------------


def even_walk(g: Graph, u: int, v: int) -> list[int]:
    """Shortest walk of even edge-length from u to v.

    BFS on the vertex x parity product; every edge of the result is
    traversed at most twice.  Raises ValueError naming the obstruction
    (disconnection, or bipartite with u, v in different classes).
    """
    if u == v:
        raise ValueError("endpoints must differ")
    g._check_vertex(u)
    g._check_vertex(v)
    parent: dict[tuple[int, int], tuple[int, int]] = {}
    start = (u, 0)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for node in frontier:
            w, par = node
            for x in sorted(g.neighbors(w)):
                child = (x, par ^ 1)
                if child not in seen:
                    seen.add(child)
                    parent[child] = node
                    nxt.append(child)
        frontier = nxt
    if (v, 0) not in seen:
        if (v, 1) in seen:
            raise ValueError(
                f"no even walk: component of {u} is bipartite with {u},{v} "
                "in different classes")
        raise ValueError(f"no even walk: {v} unreachable from {u}")
    walk = [v]
    node = (v, 0)
    while node != start:
        node = parent[node]
        walk.append(node[0])
    walk.reverse()
    counts: dict[tuple[int, int], int] = {}
    for a, b in zip(walk, walk[1:]):
        e = (min(a, b), max(a, b))
        counts[e] = counts.get(e, 0) + 1
    assert all(c <= 2 for c in counts.values())
    return walk


# -- integer weights (three-step rounding and correction) -----------------


def _warn_hypotheses(g: Graph, k: int, lam: Sequence[int], gamma: float,
                     eta: float) -> None:
    n = g.n
    stats: GraphStats = graph_stats(g)
    if stats.min_degree < ((k - 1) / k - gamma) * n:
        warnings.warn(f"min degree {stats.min_degree} below "
                      f"((k-1)/k - {gamma})n", stacklevel=3)
    if stats.independence_exact and stats.independence_number >= (1 / k - eta) * n:
        warnings.warn(f"independence number {stats.independence_number} "
                      f"not below (1/k - {eta})n", stacklevel=3)
    mean = sum(lam) / n
    if any(not (1 - gamma / 2) * mean <= l <= (1 + gamma / 2) * mean
           for l in lam):
        warnings.warn("demands are not near-uniform", stacklevel=3)
    if min(lam) < n ** (2 * k):
        warnings.warn(f"demands below n^(2k) = {n ** (2 * k)}", stacklevel=3)


def integer_clique_weights(g: Graph, k: int, lam: Sequence[int],
                           gamma: float = 0.05, eta: float = 0.1
                           ) -> IntegerWeighting:
    """Integer clique weights with exact per-vertex sums lam(u).

    Step 1 solves the packing LP on reduced demands lam'(u) =
    lam(u) - k|K_k(G,u)|n^k; step 2 rounds the offset weights to integers
    meeting the divisibility target by largest remainder; step 3 repairs
    per-vertex sums one unit at a time, each step moving weight between
    two cliques sharing a (k-1)-clique in a common neighbourhood (k >= 3)
    or alternating along a shortest even walk (k = 2).  The total
    discrepancy drops by exactly 2 per step.
    """
    n = g.n
    lam = [int(x) for x in lam]
    if len(lam) != n or any(x <= 0 for x in lam):
        raise ValueError("lam must give a positive integer per vertex")
    if sum(lam) % k:
        raise ValueError(f"k={k} must divide the total demand")
    _warn_hypotheses(g, k, lam, gamma, eta)

    cliques, a = _clique_incidence(g, k)
    if not cliques:
        raise CorrectionStuck(0, 0, "graph has no k-cliques")
    index = {q: j for j, q in enumerate(cliques)}
    at_vertex: list[list[int]] = [[] for _ in range(n)]
    for j, q in enumerate(cliques):
        for v in q:
            at_vertex[v].append(j)

    offset = k * n ** k
    lam_red = [lam[v] - len(at_vertex[v]) * offset for v in range(n)]
    if min(lam_red) < 0:
        raise ValueError("demands too small for the clique offset "
                         f"k*|K_k(G,u)|*n^k; need lam(u) >= n^(2k)")

    # step 1: fractional solve on scaled reduced demands
    scale = max(1.0, max(lam_red) / 4.0)
    result = solve_packing_lp(g, k, {v: lam_red[v] / scale for v in range(n)})
    target_frac = sum(lam_red) / (k * scale)
    if result.value < target_frac - 1e-6 * max(1.0, target_frac):
        raise CorrectionStuck(
            0, 0, f"no fractional factor: LP value {result.value * scale:.3f} "
                  f"short of {sum(lam_red) / k:.3f}")
    omega_frac = [result.weighting.get(q, 0.0) * scale for q in cliques]

    # step 2: largest-remainder rounding to integers summing to sum(lam)/k
    shifted = [w + offset for w in omega_frac]
    floors = [int(math.floor(x)) for x in shifted]
    total_target = sum(lam) // k
    deficit = total_target - sum(floors)
    deficit = max(0, min(deficit, len(cliques)))
    order = sorted(range(len(cliques)),
                   key=lambda j: (-(shifted[j] - floors[j]), j))
    weights = list(floors)
    for j in order[:deficit]:
        weights[j] += 1

    # step 3: unit transfers between a surplus and a deficit vertex
    out = correction_loop(g, k, cliques, weights, lam)
    assert all(out.per_vertex[v] == lam[v] for v in range(n))
    return out


def correction_loop(g: Graph, k: int, cliques: list[tuple[int, ...]],
                    weights: list[int], lam: Sequence[int]
                    ) -> IntegerWeighting:
    """Repair per-vertex clique-weight sums to hit ``lam`` exactly.

    ``weights`` must already meet the total: k * sum(weights) = sum(lam).
    Each step picks the lowest-id surplus vertex u and deficit vertex v
    and moves one unit of weight from a clique at u to a clique at v
    through a shared (k-1)-clique (k >= 3) or along an even walk (k = 2);
    the total discrepancy decreases by exactly 2 per step.
    """
    n = g.n
    weights = list(weights)
    index = {q: j for j, q in enumerate(cliques)}
    at_vertex: list[list[int]] = [[] for _ in range(n)]
    for j, q in enumerate(cliques):
        for v in q:
            at_vertex[v].append(j)
    current = [sum(weights[j] for j in at_vertex[v]) for v in range(n)]
    disc = [current[v] - lam[v] for v in range(n)]
    total_disc = sum(abs(d) for d in disc)
    if sum(disc) != 0:
        raise ValueError("weights do not meet the total demand")
    out = IntegerWeighting({}, {}, [], total_disc)

    step_cap = n ** k
    while total_disc:
        u = min(v for v in range(n) if disc[v] > 0)
        v = min(w for w in range(n) if disc[w] < 0)
        if len(out.steps) >= step_cap:
            raise CorrectionStuck(u, v, f"exceeded {step_cap} correction steps")
        if k == 2:
            try:
                walk = even_walk(g, u, v)
            except ValueError as exc:
                raise CorrectionStuck(u, v, str(exc)) from exc
            sign = -1
            touched = []
            for x, y in zip(walk, walk[1:]):
                j = index[(min(x, y), max(x, y))]
                weights[j] += sign
                touched.append(j)
                sign = -sign
            if min(weights[j] for j in touched) < 0:
                raise CorrectionStuck(u, v, "walk drove a weight negative")
        else:
            shared = _transfer_clique(g, k, u, v, index, weights)
            if shared is None:
                raise CorrectionStuck(
                    u, v, "no (k-1)-clique with positive weight in the "
                          "common neighbourhood")
            ku, kv = shared
            weights[index[ku]] -= 1
            weights[index[kv]] += 1
        disc[u] -= 1
        disc[v] += 1
        total_disc -= 2
        out.steps.append((u, v, total_disc))

    assert all(w >= 0 for w in weights)
    out.weights = {q: w for q, w in zip(cliques, weights) if w}
    out.per_vertex = {v: sum(weights[j] for j in at_vertex[v])
                      for v in range(n)}
    return out


def _transfer_clique(g: Graph, k: int, u: int, v: int, index: dict,
                     weights: list[int]
                     ) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """First (k-1)-clique S in N(u) & N(v) with weight left on {u} + S."""
    common = g.adj[u] & g.adj[v] & ~(1 << u) & ~(1 << v)
    members = [w for w in range(g.n) if common >> w & 1]
    if len(members) < k - 1:
        return None
    sub_edges = [(a, b) for i, a in enumerate(members) for b in members[i + 1:]
                 if g.has_edge(a, b)]
    remap = {w: i for i, w in enumerate(members)}
    sub = Graph(len(members), [(remap[a], remap[b]) for a, b in sub_edges])
    if k == 3:
        candidates = [(e,) for e in sub.edges()]
        candidates = [tuple(members[i] for i in e) for e, in candidates]
    else:
        candidates = [tuple(members[i] for i in q)
                      for q in enumerate_cliques(sub, k - 1)]
    for s in sorted(candidates):
        ku = tuple(sorted((u,) + s))
        kv = tuple(sorted((v,) + s))
        if weights[index[ku]] >= 1:
            return ku, kv
    return None
