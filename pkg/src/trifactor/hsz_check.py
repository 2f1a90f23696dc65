"""Desk-scale verification of the Hajnal-Szemeredi matching guarantee.

The guarantee: an n-vertex graph with min degree at least ((k-1)/k - x)n
contains a K_k-matching of size at least (1 - (k-1)kx) * floor(n/k).  We
check it against the exact matching solver rather than constructing an
equitable colouring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exact_factors import SearchBudget, max_clique_matching
from .graph_core import Graph

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class HszReport:
    n: int
    k: int
    min_degree: int
    x: Fraction
    bound: int
    matching_size: int
    passed: bool


def hsz_bound(n: int, k: int, x: Number) -> int:
    """ceil((1 - (k-1)k x) * floor(n/k)), clipped below at zero."""
    if n < 2 or k < 2:
        raise ValueError("need n, k >= 2")
    x = Fraction(x).limit_denominator(10**12) if isinstance(x, float) else Fraction(x)
    if not 0 <= x < 1:
        raise ValueError("x must lie in [0, 1)")
    raw = (1 - (k - 1) * k * x) * (n // k)
    return max(0, math.ceil(raw))


def verify_hsz(g: Graph, k: int, budget: Optional[SearchBudget] = None
               ) -> HszReport:
    """Compare the exact maximum K_k-matching against the guarantee.

    A failing report indicates an implementation bug, never a theorem
    counterexample.
    """
    if g.n < 2:
        raise ValueError("graph too small")
    delta = min(g.degree(v) for v in range(g.n))
    # x <= (k-1)/k < 1 always, since delta >= 0
    x = max(Fraction(0), Fraction(k - 1, k) - Fraction(delta, g.n))
    bound = hsz_bound(g.n, k, x)
    size, _ = max_clique_matching(g, k, budget=budget)
    return HszReport(g.n, k, delta, x, bound, size, size >= bound)
