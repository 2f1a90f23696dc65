"""Shared desk-scale instance builders for the randomized matching suites.

The hosts are deterministic; Monte Carlo varies only the reveal seeds.
Parameters follow the documented desk scale: n in the 600-900 range,
mu = 0.05, p = 8 n^(-2/3) (log n)^(1/3).
"""

import math
from functools import lru_cache

from trifactor.generators import gnq
from trifactor.graph_core import Graph, triangle_link


def desk_p(n: int) -> float:
    return 8.0 * n ** (-2.0 / 3.0) * math.log(n) ** (1.0 / 3.0)


@lru_cache(maxsize=None)
def help_instance(n: int = 900, a_size: int = 300, menu_degree: int = 8):
    """Host for the low-degree helper: a circulant menu on A plus a
    complete A x B bipartite layer; every B vertex completes every menu
    edge, so X_e = B."""
    half = menu_degree // 2
    menu = set()
    for i in range(a_size):
        for off in range(1, half + 1):
            a, b = i, (i + off) % a_size
            menu.add((min(a, b), max(a, b)))
    cross = [(a, b) for a in range(a_size) for b in range(a_size, n)]
    g = Graph(n, sorted(menu) + cross)
    menu = sorted(menu)
    targets = {e: tuple(range(a_size, n)) for e in menu}
    return g, menu, targets


@lru_cache(maxsize=None)
def cover_instance(n: int = 600, mu: float = 0.05, host_seed: int = 0):
    """Host for the special-cover routine: one special vertex of a dense
    random graph with a menu of ceil(mu*n^2) link edges, plus three
    disjoint quota sets."""
    g = gnq(n, 0.9, host_seed)
    ell = int(mu * mu * n)
    specials = []
    for v in range(max(1, ell)):
        menu = sorted(triangle_link(g, v))
        menu = [e for e in menu if e[0] > ell and e[1] > ell]
        need = math.ceil(mu * n * n)
        specials.append((v, tuple(menu[:need])))
    quotas = tuple(tuple(range(100 + k * 100, 200 + k * 100))
                   for k in range(3))
    return g, tuple(specials), quotas


@lru_cache(maxsize=None)
def match_cover_instance_one(n: int = 900):
    """Mode (i) host: menu = 6-regular circulant on X1; X1 complete to
    X2 and X3."""
    x1 = list(range(180))
    x2 = list(range(180, 540))
    x3 = list(range(540, 900))
    menu = set()
    for i in x1:
        for off in (1, 2, 3):
            a, b = i, (i + off) % 180
            menu.add((min(a, b), max(a, b)))
    edges = sorted(menu)
    edges += [(a, b) for a in x1 for b in x2 + x3]
    g = Graph(n, edges)
    return g, tuple(x1), tuple(x2), tuple(x3), tuple(sorted(menu))


@lru_cache(maxsize=None)
def match_cover_instance_two(n: int = 600):
    """Mode (ii) host: 6-regular circulant menus on both X1 and X2,
    complete across."""
    x1 = list(range(300))
    x2 = list(range(300, 600))
    menus = []
    for base, xs in ((0, x1), (300, x2)):
        menu = set()
        for i in range(len(xs)):
            for off in (1, 2, 3):
                a = base + i
                b = base + (i + off) % len(xs)
                menu.add((min(a, b), max(a, b)))
        menus.append(sorted(menu))
    edges = menus[0] + menus[1] + [(a, b) for a in x1 for b in x2]
    g = Graph(n, edges)
    return g, tuple(x1), tuple(x2), tuple(menus[0]), tuple(menus[1])
