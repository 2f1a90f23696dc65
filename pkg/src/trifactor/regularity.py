"""Density and (super-)regularity checks, trimming, and exact-density
subsampling.

Exact regularity checks enumerate one side's subsets and use the sorted
degree-sum trick on the other side, which is complete: for a fixed X the
extremal densities over Y of each admissible size are attained by taking
the highest (or lowest) degree vertices.  Sampled checks are sound for
failure only: a returned witness always violates regularity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .graph_core import Graph, _bits, _popcount
from .sparsify import subsample_exact

EXACT_SIDE_CAP = 16


@dataclass(frozen=True)
class RegularityVerdict:
    passed: bool
    mode: str                       # "exact" | "sampled" | "degree-audit"
    density: float
    eps: float
    witness: Optional[tuple[frozenset, frozenset]] = None
    witness_density: Optional[float] = None
    delta: Optional[float] = None   # min cross-degree ratio, super checks


def density(g: Graph, xs: Iterable[int], ys: Iterable[int]) -> Fraction:
    """e(X,Y) / (|X||Y|) for disjoint non-empty X, Y."""
    xm = g._mask_of(xs)
    ym = g._mask_of(ys)
    if xm & ym:
        raise ValueError("X and Y must be disjoint")
    if xm == 0 or ym == 0:
        raise ValueError("X and Y must be non-empty")
    e = sum(_popcount(g.adj[v] & ym) for v in _bits(xm))
    return Fraction(e, _popcount(xm) * _popcount(ym))


def _degree_profile(g: Graph, xmask: int, bs: list[int]) -> list[tuple[int, int]]:
    """(degree into X, vertex) pairs for the B side, sorted ascending."""
    return sorted((_popcount(g.adj[y] & xmask), y) for y in bs)


def check_regular_pair(g: Graph, a: Iterable[int], b: Iterable[int],
                       eps: float, mode: str = "exact", samples: int = 500,
                       seed: int = 0) -> RegularityVerdict:
    """Is (A,B) eps-regular: |d(A,B) - d(X,Y)| < eps for all large X, Y?

    Exact mode enumerates X over the smaller side (cap 16) and reads off
    the extremal Y by degree order; comparisons are exact rationals.
    """
    alist = sorted(set(a))
    blist = sorted(set(b))
    if set(alist) & set(blist):
        raise ValueError("A and B must be disjoint")
    if not alist or not blist:
        raise ValueError("A and B must be non-empty")
    d_ab = density(g, alist, blist)
    eps_f = Fraction(eps).limit_denominator(10**9)

    if mode == "exact":
        if min(len(alist), len(blist)) > EXACT_SIDE_CAP:
            raise ValueError(f"exact mode capped at side size {EXACT_SIDE_CAP}")
        if len(blist) < len(alist):
            alist, blist = blist, alist
        min_x = _size_floor(eps, len(alist))
        min_y = _size_floor(eps, len(blist))
        for r in range(min_x, len(alist) + 1):
            for xs in combinations(alist, r):
                xmask = 0
                for v in xs:
                    xmask |= 1 << v
                prof = _degree_profile(g, xmask, blist)
                degs = [t[0] for t in prof]
                prefix = [0]
                for dg in degs:
                    prefix.append(prefix[-1] + dg)
                total = prefix[-1]
                for s in range(min_y, len(blist) + 1):
                    lo = Fraction(prefix[s], r * s)
                    hi = Fraction(total - prefix[len(blist) - s], r * s)
                    for dens, pick in ((lo, prof[:s]), (hi, prof[-s:])):
                        if abs(dens - d_ab) >= eps_f:
                            ys = frozenset(t[1] for t in pick)
                            return RegularityVerdict(
                                False, "exact", float(d_ab), eps,
                                (frozenset(xs), ys), float(dens))
        return RegularityVerdict(True, "exact", float(d_ab), eps)

    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    sx = _size_floor(eps, len(alist))
    sy = _size_floor(eps, len(blist))
    for _ in range(samples):
        xs = frozenset(rng.sample(alist, sx))
        ys = frozenset(rng.sample(blist, sy))
        d_xy = density(g, xs, ys)
        if abs(d_xy - d_ab) >= eps_f:
            return RegularityVerdict(False, "sampled", float(d_ab), eps,
                                     (xs, ys), float(d_xy))
    return RegularityVerdict(True, "sampled", float(d_ab), eps)


def _size_floor(eps: float, size: int) -> int:
    """Smallest qualifying subset size ceil(eps * size), at least 1."""
    import math

    return max(1, math.ceil(eps * size - 1e-12))


def _min_cross_degree(g: Graph, xs: list[int], ys: list[int]) -> int:
    ymask = 0
    for y in ys:
        ymask |= 1 << y
    return min(_popcount(g.adj[x] & ymask) for x in xs)


def check_super_regular(g: Graph, a: Iterable[int], b: Iterable[int],
                        eps: float, d: Optional[float] = None,
                        delta: Optional[float] = None, mode: str = "exact",
                        samples: int = 500, seed: int = 0
                        ) -> RegularityVerdict:
    """Regularity plus two-sided minimum cross-degree floors.

    Passing requires eps-regularity, measured density at least d (when
    given), and min degree at least delta*|other side| (delta defaults to
    d - eps).  If every cross-degree is at least (1 - eps^2) of the other
    side, the pair is super-regular outright and subset checks are
    skipped (fast path; only taken when it certifies the requested d).
    """
    alist = sorted(set(a))
    blist = sorted(set(b))
    if not alist or not blist:
        raise ValueError("A and B must be non-empty")
    if delta is None:
        if d is None:
            raise ValueError("need d or delta")
        delta = d - eps
    deg_a = _min_cross_degree(g, alist, blist) / len(blist)
    deg_b = _min_cross_degree(g, blist, alist) / len(alist)
    min_ratio = min(deg_a, deg_b)
    d_ab = float(density(g, alist, blist))

    floor = 1.0 - eps * eps
    if min_ratio >= floor and (d is None or d <= floor):
        return RegularityVerdict(True, "degree-audit", d_ab, eps,
                                 delta=min_ratio)

    base = check_regular_pair(g, alist, blist, eps, mode=mode,
                              samples=samples, seed=seed)
    ok = base.passed and min_ratio >= delta - 1e-12
    if ok and d is not None:
        ok = d_ab >= d - 1e-12
    return RegularityVerdict(ok, base.mode, d_ab, eps,
                             witness=base.witness,
                             witness_density=base.witness_density,
                             delta=min_ratio)


def trim_to_super_regular(g: Graph, parts: Sequence[Iterable[int]],
                          eps: float, d: float, samples: int = 500,
                          seed: int = 0
                          ) -> tuple[list[list[int]], RegularityVerdict]:
    """Trim equal-size parts down to ceil((1-k*eps)*n) each, dropping
    low-degree vertices first, and sample-verify the result.

    A vertex is low-degree if it has fewer than (d-eps)*n neighbours in
    some other part; more than k*eps*n of those in one part is an error.
    The removal is padded to the exact target size, lowest total
    cross-degree first with lowest id on ties.
    """
    import math

    k = len(parts)
    plists = [sorted(set(p)) for p in parts]
    n = len(plists[0])
    if any(len(p) != n for p in plists):
        raise ValueError("parts must have equal sizes")
    if not 0 < eps <= 1.0 / (2 * k):
        raise ValueError("need 0 < eps <= 1/(2k)")
    target = math.ceil((1 - k * eps) * n)
    masks = []
    for p in plists:
        m = 0
        for v in p:
            m |= 1 << v
        masks.append(m)

    trimmed: list[list[int]] = []
    for i, p in enumerate(plists):
        low = [v for v in p
               if any(_popcount(g.adj[v] & masks[j]) < (d - eps) * n
                      for j in range(k) if j != i)]
        if len(low) > n - target:
            raise ValueError(
                f"part {i}: {len(low)} low-degree vertices exceed the "
                f"{n - target} removals allowed; input not regular enough")
        keep = [v for v in p if v not in set(low)]
        surplus = len(keep) - target
        if surplus > 0:
            other = 0
            for j in range(k):
                if j != i:
                    other |= masks[j]
            keep.sort(key=lambda v: (_popcount(g.adj[v] & other), v))
            keep = sorted(keep[surplus:])
        trimmed.append(keep)

    verdicts = []
    for i in range(k):
        for j in range(i + 1, k):
            verdicts.append(check_super_regular(
                g, trimmed[i], trimmed[j], 2 * eps, d=d - eps,
                delta=d - k * eps, mode="sampled", samples=samples,
                seed=seed + i * k + j))
    worst = min(verdicts, key=lambda v: v.passed)
    return trimmed, worst


def triangle_estimate(g: Graph, x1: Iterable[int], x2: Iterable[int],
                      x3: Iterable[int], densities: tuple[float, float, float],
                      eps: float, n: Optional[int] = None
                      ) -> tuple[float, int, bool]:
    """Transversal triangle count against d12*d13*d23*|X1||X2||X3|.

    Passes iff the exact count is within 10*eps*n^3 of the prediction;
    n defaults to the largest part size.
    """
    xs = [sorted(set(x)) for x in (x1, x2, x3)]
    if n is None:
        n = max(len(x) for x in xs)
    if any(len(x) < eps * n for x in xs):
        raise ValueError("subset sizes must be at least eps*n")
    m2 = 0
    for v in xs[1]:
        m2 |= 1 << v
    m3 = 0
    for v in xs[2]:
        m3 |= 1 << v
    actual = 0
    for v in xs[0]:
        for w in _bits(g.adj[v] & m2):
            actual += _popcount(g.adj[v] & g.adj[w] & m3)
    d12, d13, d23 = densities
    predicted = d12 * d13 * d23 * len(xs[0]) * len(xs[1]) * len(xs[2])
    passed = abs(actual - predicted) <= 10 * eps * n**3
    return predicted, actual, passed


def exact_density_subgraph(g: Graph, v1: Iterable[int], v2: Iterable[int],
                           d: float, eps: float, seed: int) -> Graph:
    """Spanning bipartite subgraph with exactly d*n^2 cross edges.

    Follows the protect-and-subsample procedure: vertices of degree at
    most (d' - eps^2)n keep all their edges, and the remaining edges are
    subsampled uniformly to hit the exact count.  The input pair is
    assumed (eps^2, d+)-super-regular; d >= 4*eps is required.
    """
    v1l = sorted(set(v1))
    v2l = sorted(set(v2))
    n = len(v1l)
    if len(v2l) != n:
        raise ValueError("parts must have equal size")
    if d < 4 * eps:
        raise ValueError("need d >= 4*eps")
    target_f = d * n * n
    target = round(target_f)
    if abs(target_f - target) > 1e-6:
        raise ValueError(f"d*n^2 = {target_f} is not an integer")
    m1 = 0
    for v in v1l:
        m1 |= 1 << v
    m2 = 0
    for v in v2l:
        m2 |= 1 << v
    cross = [(min(u, w), max(u, w)) for u in v1l
             for w in _bits(g.adj[u] & m2)]
    if target > len(cross):
        raise ValueError(f"input has only {len(cross)} cross edges, "
                         f"need {target}")
    d_meas = len(cross) / (n * n)
    cutoff = (d_meas - eps * eps) * n
    low1 = {v for v in v1l if _popcount(g.adj[v] & m2) <= cutoff}
    low2 = {v for v in v2l if _popcount(g.adj[v] & m1) <= cutoff}
    protected = [e for e in cross if e[0] in low1 or e[0] in low2
                 or e[1] in low1 or e[1] in low2]
    free = [e for e in cross if e not in set(protected)]
    if len(protected) > target:
        raise ValueError("protected low-degree edges exceed the target; "
                         "degenerate input")
    chosen = subsample_exact(free, target - len(protected), seed)
    return Graph(g.n, sorted(chosen | set(protected)), g.source_ids)
