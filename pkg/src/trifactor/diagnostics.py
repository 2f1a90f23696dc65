"""Entropy and concentration instrumentation.

All embedding distributions are computed by exact counting (rational
arithmetic until the final log); Monte Carlo enters only through which
instances get generated, never through the distributions themselves.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .exact_factors import count_embeddings, triangle_distribution
from .graph_core import (Graph, TripartiteGraph, check_vertex_tuple,
                         remove_vertices)

DIST_SUM_TOL = 1e-9


def shannon_entropy(dist: Mapping) -> float:
    """Entropy in nats of a probability map; 0*log(0) = 0."""
    total = 0.0
    h = 0.0
    for p in dist.values():
        p = float(p)
        if p < 0:
            raise ValueError(f"negative probability {p}")
        total += p
        if p > 0:
            h -= p * math.log(p)
    if abs(total - 1.0) > DIST_SUM_TOL:
        raise ValueError(f"probabilities sum to {total}, not 1")
    return h


def benchmark_H(n: int, p: float, d: float) -> float:
    """The entropy benchmark log((p*d)^3 * n^2), in nats."""
    if n < 1 or not 0 < p <= 1 or not 0 < d <= 1:
        raise ValueError("need n >= 1 and p, d in (0,1]")
    return 3 * math.log(p * d) + 2 * math.log(n)


@dataclass(frozen=True)
class NearUniformReport:
    support_size: int
    j_fraction: float
    j_mass: float
    passed: bool


def near_uniform_check(dist: Mapping, beta: float) -> NearUniformReport:
    """Near-uniformity of a distribution: the set J of points with mass
    within (1 +- beta)/|S| must hold at least a (1-beta) fraction of both
    the support and the probability mass."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    values = {k: float(v) for k, v in dist.items()}
    total = sum(values.values())
    if abs(total - 1.0) > DIST_SUM_TOL or min(values.values(), default=0) < 0:
        raise ValueError("invalid distribution")
    size = len(values)
    a = 1.0 / size
    j = [k for k, v in values.items()
         if (1 - beta) * a <= v <= (1 + beta) * a]
    j_fraction = len(j) / size
    j_mass = sum(values[k] for k in j)
    passed = len(j) >= (1 - beta) * size and j_mass >= 1 - beta
    return NearUniformReport(size, j_fraction, j_mass, passed)


def zeta_weight(gp: TripartiteGraph, t: int, avoid: Sequence[int], u: int,
                v: int, e: tuple[int, int]) -> int:
    """t times the number of labelled embeddings of t-1 disjoint triangles
    avoiding ``avoid``, u, v, and both endpoints of e."""
    if t < 1:
        raise ValueError("t must be at least 1")
    w1, w2 = e
    pu, pv = gp.part_of(u), gp.part_of(v)
    if pu != pv:
        raise ValueError("u and v must share a part")
    if {gp.part_of(w1), gp.part_of(w2)} != {0, 1, 2} - {pv}:
        raise ValueError("e must be a cross pair of the two other parts")
    drop = set(avoid) | {u, v, w1, w2}
    if len(drop) != len(avoid) + 4:
        raise ValueError("avoid, u, v, e must be pairwise distinct")
    # avoid-based count so hosts shrunk below t-1 yield 0, not an error
    return t * count_embeddings(gp, t - 1, avoid=drop).value


@dataclass
class EntropyReport:
    benchmark: float
    beta: float
    eps_prime: float
    entropies: dict = field(default_factory=dict)   # vertex -> nats
    cover_probability: dict = field(default_factory=dict)
    good_lower: set = field(default_factory=set)     # h_v >= H - beta
    good_upper: set = field(default_factory=set)     # h_v <= H + eps'
    lower_fraction: float = 0.0
    upper_fraction: float = 0.0
    empty: bool = False


def entropy_profile(gp: TripartiteGraph, t: int, avoid: Sequence[int],
                    u: Optional[int], beta: float, eps_prime: float,
                    p: float, d: float) -> EntropyReport:
    """Conditional entropies h(triangle at v | v covered) against the
    benchmark H(n, p, d), for v ranging over the designated part.

    ``avoid`` is a prefix tuple (entry i from part i+1) and ``u``, when
    given, extends it in the next part; the profiled part is that of u.
    """
    avoid = check_vertex_tuple(gp, avoid)
    ell = len(avoid)  # 0-based part index of u
    if u is not None:
        if gp.part_of(u) != ell:
            raise ValueError(f"u must lie in part {ell + 1}")
        full_avoid = avoid + (u,)
    else:
        full_avoid = avoid
    n = gp.part_sizes[ell]
    report = EntropyReport(benchmark_H(n, p, d), beta, eps_prime)
    total = count_embeddings(gp, t, full_avoid).value
    if total == 0:
        raise ValueError("no embeddings exist under the avoid constraints")
    candidates = [v for v in gp.part(ell) if v not in full_avoid]
    for v in candidates:
        dist = triangle_distribution(gp, t, full_avoid, v)
        p_iso = dist.isolation_probability()
        report.cover_probability[v] = 1.0 - float(p_iso)
        if p_iso == 1:
            continue
        cond = dist.conditional_on_covered()
        report.entropies[v] = shannon_entropy(
            {k: float(pr) for k, pr in cond.items()})
    if not report.entropies:
        report.empty = True
        return report
    h = report.benchmark
    report.good_lower = {v for v, e in report.entropies.items()
                         if e >= h - beta}
    report.good_upper = {v for v, e in report.entropies.items()
                         if e <= h + eps_prime}
    denom = len(candidates)
    report.lower_fraction = len(report.good_lower) / denom
    report.upper_fraction = len(report.good_upper) / denom
    return report


@dataclass
class LdlReport:
    floor: float
    ratios: dict                    # candidate vertex -> float ratio
    passing_fraction: float
    identity_holds: bool            # sum of counts == (n - t) * base, exact


def ldl_profile(gp: TripartiteGraph, t: int, avoid: Sequence[int],
                d: float) -> LdlReport:
    """Ratios |Psi^t avoiding one more vertex| / |Psi^t| over the next
    part, against the (d/10)^2 (n-t)/n floor, plus the exact averaging
    identity: the ratios sum to exactly n - t."""
    avoid = check_vertex_tuple(gp, avoid)
    ell = len(avoid)
    if ell >= 3:
        raise ValueError("avoid tuple already has all three parts")
    n = gp.part_sizes[ell]
    base = count_embeddings(gp, t, avoid).value
    if base == 0:
        raise ValueError("no embeddings under the avoid constraints")
    counts = {u: count_embeddings(gp, t, avoid + (u,)).value
              for u in gp.part(ell)}
    floor = (d / 10.0) ** 2 * (n - t) / n
    ratios = {u: float(Fraction(c, base)) for u, c in counts.items()}
    passing = sum(1 for r in ratios.values() if r >= floor)
    identity = sum(counts.values()) == (n - t) * base
    return LdlReport(floor, ratios, passing / n, identity)


@dataclass(frozen=True)
class ConcentrationClause:
    predicted: float
    observed: float
    tolerance: float
    passed: bool
    exceptional: int = 0


@dataclass(frozen=True)
class ConcentrationReport:
    subsets: ConcentrationClause
    per_vertex: ConcentrationClause
    global_cap: ConcentrationClause

    @property
    def passed(self) -> bool:
        return (self.subsets.passed and self.per_vertex.passed
                and self.global_cap.passed)


def _cross_blocks(gp: TripartiteGraph):
    full = gp.adjacency_matrix().astype(np.int64)
    p1, p2, p3 = (gp.part(i) for i in range(3))
    sl = [slice(r.start, r.stop) for r in (p1, p2, p3)]
    return full[sl[0], sl[1]], full[sl[0], sl[2]], full[sl[1], sl[2]]


def _triangle_counts_per_vertex(m12, m13, m23):
    c1 = ((m12 @ m23) * m13).sum(axis=1)
    c2 = ((m12.T @ m13) * m23).sum(axis=1)
    c3 = ((m13.T @ m12) * m23.T).sum(axis=1)
    return c1, c2, c3


def concentration_check(gp: TripartiteGraph, d: float, p: float,
                        eps_prime: float, subset_samples: int = 20,
                        seed: int = 0) -> ConcentrationReport:
    """Three empirical triangle-count checks on a sparsified host:

    (a) for sampled subset triples, counts match (pd)^3 |X1||X2||X3| up to
        eps' p^3 n^3; (b) all but eps'*n vertices lie in (1 +- eps') of
        (pd)^3 n^2 triangles; (c) no vertex lies in more than 10 p^3 n^2.
    """
    if not gp.is_balanced():
        raise ValueError("concentration checks need balanced parts")
    n = gp.part_sizes[0]
    m12, m13, m23 = _cross_blocks(gp)

    # (a) sampled subset triples, plus the full triple
    rng = random.Random(seed)
    tol_a = eps_prime * p**3 * n**3
    worst = 0.0
    triples = [(np.arange(n), np.arange(n), np.arange(n))]
    for _ in range(subset_samples):
        idx = []
        for _i in range(3):
            mask = np.array([rng.random() < 0.5 for _ in range(n)])
            if not mask.any():
                mask[rng.randrange(n)] = True
            idx.append(np.nonzero(mask)[0])
        triples.append(tuple(idx))
    for i1, i2, i3 in triples:
        a12 = m12[np.ix_(i1, i2)]
        a13 = m13[np.ix_(i1, i3)]
        a23 = m23[np.ix_(i2, i3)]
        count = int(((a12 @ a23) * a13).sum())
        pred = (p * d) ** 3 * len(i1) * len(i2) * len(i3)
        worst = max(worst, abs(count - pred))
    clause_a = ConcentrationClause((p * d) ** 3 * n**3, worst, tol_a,
                                   worst <= tol_a)

    # (b) per-vertex counts within (1 +- eps') of (pd)^3 n^2
    c1, c2, c3 = _triangle_counts_per_vertex(m12, m13, m23)
    counts = np.concatenate([c1, c2, c3])
    mean_pred = (p * d) ** 3 * n * n
    lo, hi = (1 - eps_prime) * mean_pred, (1 + eps_prime) * mean_pred
    exceptional = int(((counts < lo) | (counts > hi)).sum())
    clause_b = ConcentrationClause(mean_pred, float(counts.mean()),
                                   eps_prime * n,
                                   exceptional <= eps_prime * n,
                                   exceptional=exceptional)

    # (c) hard cap on every vertex
    cap = 10 * p**3 * n * n
    cmax = float(counts.max()) if counts.size else 0.0
    clause_c = ConcentrationClause(cap, cmax, cap, cmax <= cap)

    return ConcentrationReport(clause_a, clause_b, clause_c)
