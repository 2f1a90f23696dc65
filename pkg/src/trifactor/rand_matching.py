"""Randomized triangle-matching subroutines over a lazily revealed
sparsifier.

Each algorithm run owns a RevealState: the random status of a host edge
is drawn at most once (per-edge threshold against the retention
probability) and cached.  A RevealState at round r sees exactly the
graph split_rounds(g, p*rounds, rounds, seed)[r] would materialise, so
multi-round algorithms consume the same randomness as the eager
splitting.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .graph_core import Graph, TriangleMatching, _bits, _popcount
from .sparsify import edge_threshold

Edge = tuple[int, int]


class RevealState:
    """Lazy per-edge reveal bookkeeping for one algorithm run."""

    def __init__(self, g: Graph, p: float, seed: int, round_index: int = 0):
        if not 0.0 <= p <= 1.0:
            raise ValueError("retention probability must lie in [0,1]")
        self.g = g
        self.p = p
        self.seed = seed
        self.round_index = round_index
        self.outcomes: dict[Edge, bool] = {}
        self.draws: Counter = Counter()

    def _canon(self, u: int, v: int) -> Edge:
        if not self.g.has_edge(u, v):
            raise ValueError(f"({u},{v}) is not an edge of the host")
        return (u, v) if u < v else (v, u)

    def reveal(self, u: int, v: int) -> bool:
        """Draw the status of an edge; drawing twice is a bug."""
        e = self._canon(u, v)
        if e in self.outcomes:
            raise AssertionError(f"edge {e} revealed twice")
        self.draws[e] += 1
        out = edge_threshold(self.seed, *e, self.round_index) < self.p
        self.outcomes[e] = out
        return out

    def status(self, u: int, v: int) -> bool:
        """Status of an edge, revealing it if still alive."""
        e = self._canon(u, v)
        if e in self.outcomes:
            return self.outcomes[e]
        return self.reveal(u, v)

    def is_alive(self, u: int, v: int) -> bool:
        return self._canon(u, v) not in self.outcomes

    def max_draws_per_edge(self) -> int:
        return max(self.draws.values(), default=0)


@dataclass
class CoverResult:
    matching: TriangleMatching
    ordered: list = field(default_factory=list)  # triangles in special order
    quota_usage: list[int] = field(default_factory=list)


@dataclass
class MatchCoverResult:
    matching: TriangleMatching
    composition: dict = field(default_factory=dict)  # label -> triangles


def greedy_triangle_matching(gp: Graph,
                             parts: Optional[Sequence[Iterable[int]]] = None
                             ) -> TriangleMatching:
    """Maximal triangle matching, repeatedly taking the lexicographically
    least triangle on uncovered vertices (transversal when parts given)."""
    part_of = None
    if parts is not None:
        part_of = {}
        for i, p in enumerate(parts):
            for v in p:
                if v in part_of:
                    raise ValueError("parts must be disjoint")
                part_of[v] = i

    def transversal(*vs: int) -> bool:
        if part_of is None:
            return True
        seen = [part_of.get(v) for v in vs]
        return None not in seen and len(set(seen)) == len(seen)

    adj = gp.adj
    alive = gp.full_mask()
    triangles = []
    while True:
        found = None
        for a in _bits(alive):
            nb_a = adj[a] & alive & ~((1 << (a + 1)) - 1)
            for b in _bits(nb_a):
                if not transversal(a, b):
                    continue
                common = adj[a] & adj[b] & alive & ~((1 << (b + 1)) - 1)
                for c in _bits(common):
                    if transversal(a, b, c):
                        found = (a, b, c)
                        break
                if found:
                    break
            if found:
                break
        if not found:
            break
        triangles.append(found)
        for v in found:
            alive &= ~(1 << v)
    return TriangleMatching.of(triangles, host=gp)


def cover_special_vertices(g: Graph, p: float,
                           specials: Sequence[tuple[int, Iterable[Edge]]],
                           quotas: Sequence[Iterable[int]], mu: float,
                           seed: int, state: Optional[RevealState] = None
                           ) -> Optional[CoverResult]:
    """Cover each special vertex with a triangle through its edge menu,
    while no quota set loses more than 12*mu*|A| + 1 vertices.

    One step per special: reveal the edges at it that avoid other
    specials, full quota sets and used vertices; then scan its alive menu
    edges with both endpoints among the appearing ones, lexicographically,
    and take the first that appears.  Returns None when a step finds no
    triangle.
    """
    vs = [v for v, _ in specials]
    if len(set(vs)) != len(vs):
        raise ValueError("special vertices must be distinct")
    menus = []
    for v, edges in specials:
        menu = sorted({(min(e), max(e)) for e in edges})
        for a, b in menu:
            if not (g.has_edge(v, a) and g.has_edge(v, b)
                    and g.has_edge(a, b)):
                raise ValueError(f"({a},{b}) not in the triangle link of {v}")
        menus.append(menu)
    quota_sets = [frozenset(q) for q in quotas]
    special_set = set(vs)
    for i, q in enumerate(quota_sets):
        if q & special_set:
            raise ValueError(f"quota set {i} meets the specials")
        for j in range(i + 1, len(quota_sets)):
            if q & quota_sets[j]:
                raise ValueError("quota sets must be disjoint")

    n = g.n
    if len(vs) > mu * mu * n:
        warnings.warn(f"{len(vs)} specials exceed mu^2*n = {mu * mu * n:.1f}",
                      stacklevel=2)
    if any(len(m) < mu * n * n for m in menus):
        warnings.warn("some edge menu is smaller than mu*n^2", stacklevel=2)

    st = state if state is not None else RevealState(g, p, seed)
    used: set[int] = set()
    usage = [0] * len(quota_sets)
    caps = [12 * mu * len(q) for q in quota_sets]
    triangles = []
    for v, menu in zip(vs, menus):
        full_union: set[int] = set()
        for k, q in enumerate(quota_sets):
            if usage[k] >= caps[k]:
                full_union |= q
        banned = special_set | full_union | used
        appeared: set[int] = set()
        for w in sorted(g.neighbors(v)):
            if w in banned:
                continue
            if st.status(v, w):
                appeared.add(w)
        chosen = None
        for a, b in menu:
            if a not in appeared or b not in appeared:
                continue
            if not st.is_alive(a, b):
                continue
            # keep the stated quota bound even at fractional caps
            if any((a in q) + (b in q) + usage[k] > caps[k] + 1
                   for k, q in enumerate(quota_sets)):
                continue
            if st.reveal(a, b):
                chosen = (a, b)
                break
        if chosen is None:
            return None
        a, b = chosen
        triangles.append((v, a, b))
        used.update((v, a, b))
        for k, q in enumerate(quota_sets):
            usage[k] += (a in q) + (b in q)
    assert all(usage[k] <= caps[k] + 1 for k in range(len(quota_sets)))
    return CoverResult(TriangleMatching.of(triangles, host=g),
                       [tuple(sorted(t)) for t in triangles], usage)


def match_cover_help(g: Graph, p: float, edges: Iterable[Edge],
                     targets: dict, mu: float, seed: int,
                     state: Optional[RevealState] = None
                     ) -> MatchCoverResult:
    """Greedy triangle matching where each triangle is a menu edge plus a
    vertex from that edge's target set, in the revealed sparsifier.

    The menu must have max degree at most mu*n and size in
    [mu*n, mu^2*n^2] (larger menus are shrunk to the cap); target sets
    avoid the menu's vertices.  The |E|/(10*mu*n) size goal is a measured
    property of the output, not a postcondition.
    """
    n = g.n
    menu = sorted({(min(e), max(e)) for e in edges})
    if not menu or len(menu) < mu * n:
        raise ValueError(f"menu of {len(menu)} edges is below mu*n")
    deg: Counter = Counter()
    for a, b in menu:
        if not g.has_edge(a, b):
            raise ValueError(f"menu edge ({a},{b}) not in the host")
        deg[a] += 1
        deg[b] += 1
    if max(deg.values()) > mu * n:
        raise ValueError("menu max degree exceeds mu*n")
    cap = int(mu * mu * n * n)
    if len(menu) > cap:
        menu = menu[:cap]
    vertex_mask = 0
    for v in deg:
        vertex_mask |= 1 << v
    tsets = {}
    for e in menu:
        xs = sorted(set(targets[e]))
        if not xs:
            raise ValueError(f"edge {e} has an empty target set")
        xmask = 0
        for x in xs:
            xmask |= 1 << x
        if xmask & vertex_mask:
            raise ValueError(f"target set of {e} meets the menu's vertices")
        if len(xs) < mu * n:
            raise ValueError(f"target set of {e} smaller than mu*n")
        if xmask & ~(g.adj[e[0]] & g.adj[e[1]]):
            raise ValueError(f"target set of {e} has non-triangle vertices")
        tsets[e] = xs

    st = state if state is not None else RevealState(g, p, seed)
    used: set[int] = set()
    triangles = []
    composition = {}
    progress = True
    while progress:
        progress = False
        for a, b in menu:
            if a in used or b in used:
                continue
            if not st.status(a, b):
                continue
            for x in tsets[(a, b)]:
                if x in used:
                    continue
                if st.status(a, x) and st.status(b, x):
                    triangles.append((a, b, x))
                    composition[(a, b)] = x
                    used.update((a, b, x))
                    progress = True
                    break
            if progress:
                break
    return MatchCoverResult(TriangleMatching.of(triangles, host=g),
                            composition)


def match_cover(g: Graph, p: float, mode: str, mu: float, seed: int, *,
                x1: Iterable[int], x2: Iterable[int],
                x3: Iterable[int] = (), edges: Iterable[Edge] = (),
                edges2: Iterable[Edge] = (), n1: int = 0, n2: int = 0,
                n3: int = 0) -> Optional[MatchCoverResult]:
    """Three-phase triangle matching with a demanded composition.

    Mode "i": ``edges`` lives inside x1; build n2 triangles (edge + x2
    vertex) and n3 triangles (edge + x3 vertex).  Mode "ii": ``edges``
    inside x1 and ``edges2`` inside x2; build n1 triangles (x1 edge + x2
    vertex) and n2 triangles (x2 edge + x1 vertex).  Phases 1-2 run the
    low-degree helper on independent sparsification rounds; phase 3
    covers the high-degree vertices via the special-cover routine.
    Returns None if any phase comes up short.
    """
    if mode == "i":
        return _match_cover_one(g, p, mu, seed, x1, x2, x3, edges, n2, n3)
    if mode == "ii":
        return _match_cover_two(g, p, mu, seed, x1, x2, edges, edges2,
                                n1, n2)
    raise ValueError(f"mode must be 'i' or 'ii', not {mode!r}")


def _round_states(g: Graph, p: float, seed: int) -> list[RevealState]:
    return [RevealState(g, p / 3.0, seed, round_index=r) for r in range(3)]


def _sorted_disjoint(*sets: Iterable[int]) -> list[list[int]]:
    lists = [sorted(set(s)) for s in sets]
    seen: set[int] = set()
    for s in lists:
        if seen & set(s):
            raise ValueError("vertex sets must be disjoint")
        seen |= set(s)
    return lists


def _match_cover_one(g, p, mu, seed, x1, x2, x3, edges, n2, n3
                     ) -> Optional[MatchCoverResult]:
    n = g.n
    x1l, x2l, x3l = _sorted_disjoint(x1, x2, x3)
    menu = sorted({(min(e), max(e)) for e in edges})
    x1set = set(x1l)
    if any(a not in x1set or b not in x1set for a, b in menu):
        raise ValueError("edges must lie inside x1")
    deg: Counter = Counter()
    for a, b in menu:
        deg[a] += 1
        deg[b] += 1
    delta = min((deg.get(v, 0) for v in x1l), default=0)
    if n2 + n3 > min(delta, mu**5 * n):
        warnings.warn("n2+n3 exceeds min(delta_E, mu^5*n)", stacklevel=3)
    rounds = _round_states(g, p, seed)

    big = {v for v in x1l if deg.get(v, 0) >= mu * n}
    small = [v for v in x1l if v not in big]
    if len(big) >= n2 + n3:
        t1: list = []
        t2: list = []
        n2p = n3p = 0
    else:
        n2p = min(n2 + n3 - len(big), n2)
        n3p = n2 + n3 - len(big) - n2p
        t1 = []
        if n2p > 0:
            got = _help_phase(g, rounds[0], menu, small, x2l, mu, set())
            if got is None or len(got) < n2p:
                return None
            t1 = got[:n2p]
        used1 = {v for t in t1 for v in t}
        t2 = []
        if n3p > 0:
            small2 = [v for v in small if v not in used1]
            got = _help_phase(g, rounds[1], menu, small2, x3l, mu, used1)
            if got is None or len(got) < n3p:
                return None
            t2 = got[:n3p]

    used = {v for t in t1 + t2 for v in t}
    n2pp, n3pp = n2 - n2p, n3 - n3p
    t3 = []
    if n2pp + n3pp > 0:
        big_sorted = sorted(big)
        b2, b3 = big_sorted[:n2pp], big_sorted[n2pp:n2pp + n3pp]
        if len(b2) < n2pp or len(b3) < n3pp:
            return None
        x1pp = [v for v in x1l if v not in used and v not in big]
        specials = []
        for v, side in [(v, x2l) for v in b2] + [(v, x3l) for v in b3]:
            side_ok = [x for x in side if x not in used]
            menu_v = _special_menu(g, v, menu, x1pp, side_ok)
            if not menu_v:
                return None
            specials.append((v, menu_v))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            cover = cover_special_vertices(g, p / 3.0, specials, [], mu,
                                           seed, state=rounds[2])
        if cover is None:
            return None
        t3 = cover.ordered

    comp = {"X2": t1 + t3[:n2pp], "X3": t2 + t3[n2pp:]}
    matching = TriangleMatching.of(t1 + t2 + t3, host=g)
    return MatchCoverResult(matching, comp)


def _match_cover_two(g, p, mu, seed, x1, x2, edges, edges2, n1, n2
                     ) -> Optional[MatchCoverResult]:
    n = g.n
    x1l, x2l = _sorted_disjoint(x1, x2)
    menus = []
    for xl, es in ((x1l, edges), (x2l, edges2)):
        menu = sorted({(min(e), max(e)) for e in es})
        xs = set(xl)
        if any(a not in xs or b not in xs for a, b in menu):
            raise ValueError("each edge set must lie inside its part")
        menus.append(menu)
    mu_p = mu / 2.0
    degs = []
    for menu in menus:
        d: Counter = Counter()
        for a, b in menu:
            d[a] += 1
            d[b] += 1
        degs.append(d)
    targets = [n1, n2]
    bigs = []
    for i in (0, 1):
        hi = sorted(v for v in (x1l, x2l)[i]
                    if degs[i].get(v, 0) >= mu_p * n)
        bigs.append(set(hi[:targets[i]]))
    smalls = [[v for v in (x1l, x2l)[i] if v not in bigs[i]] for i in (0, 1)]
    nps = [targets[i] - len(bigs[i]) for i in (0, 1)]
    if any(x < 0 for x in nps):
        raise AssertionError("big sets were not shrunk correctly")
    rounds = _round_states(g, p, seed)

    order = (0, 1) if nps[0] <= nps[1] else (1, 0)
    taken: list[list] = [[], []]
    used: set[int] = set()
    for phase, i in enumerate(order):
        if nps[i] == 0:
            continue
        small_own = [v for v in smalls[i] if v not in used]
        small_other = [v for v in smalls[1 - i] if v not in used]
        got = _help_phase(g, rounds[phase], menus[i], small_own,
                          small_other, mu_p, used)
        if got is None or len(got) < nps[i]:
            return None
        taken[i] = got[:nps[i]]
        used |= {v for t in taken[i] for v in t}

    t3 = []
    b_all = sorted(bigs[0]) + sorted(bigs[1])
    if b_all:
        specials = []
        for i in (0, 1):
            own = [v for v in smalls[i] if v not in used]
            other = [v for v in smalls[1 - i] if v not in used]
            for v in sorted(bigs[i]):
                menu_v = _special_menu(g, v, menus[i], own, other)
                if not menu_v:
                    return None
                specials.append((v, menu_v))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            cover = cover_special_vertices(g, p / 3.0, specials, [], mu,
                                           seed, state=rounds[2])
        if cover is None:
            return None
        t3 = cover.ordered

    n_b1 = len(bigs[0])
    comp = {"E1": taken[0] + t3[:n_b1], "E2": taken[1] + t3[n_b1:]}
    matching = TriangleMatching.of(taken[0] + taken[1] + t3, host=g)
    return MatchCoverResult(matching, comp)


def _help_phase(g, state, menu, own_alive, other_side, mu, used
                ) -> Optional[list[tuple[int, int, int]]]:
    """One low-degree phase: restrict the menu to surviving own-side
    vertices, attach target sets on the other side, and run the helper."""
    own = set(own_alive)
    sub_menu = [(a, b) for a, b in menu if a in own and b in own]
    if not sub_menu:
        return None
    other_mask = 0
    for x in other_side:
        if x not in used:
            other_mask |= 1 << x
    tgt = {}
    for a, b in sub_menu:
        tgt[(a, b)] = sorted(_bits(g.adj[a] & g.adj[b] & other_mask))
    # edges whose surviving target pool fell below mu*n are dropped
    sub_menu = [e for e in sub_menu if len(tgt[e]) >= mu * g.n]
    if not sub_menu:
        return None
    try:
        result = match_cover_help(g, state.p, sub_menu, tgt, mu,
                                  state.seed, state=state)
    except ValueError:
        return None
    return result.matching.sorted_triangles()


def _special_menu(g, v, menu, own_pool, other_pool) -> list[Edge]:
    """Edges (w, y) with w an own-pool menu-neighbour of v and y in the
    other pool adjacent to both; the special-cover menu for v."""
    own = set(own_pool)
    partners = sorted({b if a == v else a for a, b in menu if v in (a, b)
                       and (b if a == v else a) in own})
    other_mask = 0
    for y in other_pool:
        other_mask |= 1 << y
    out = []
    for w in partners:
        for y in _bits(g.adj[v] & g.adj[w] & other_mask):
            out.append((min(w, y), max(w, y)))
    return sorted(set(out))
