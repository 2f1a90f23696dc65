"""hsz_check: the matching guarantee holds on everything we throw at it."""

from fractions import Fraction

import pytest

from trifactor.generators import (complete_tripartite, gnq, hsz_extremal,
                                  nash_williams_tripartite, planted_sparse)
from trifactor.graph_core import Graph
from trifactor.hsz_check import hsz_bound, verify_hsz


def complete(n):
    return Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


class TestBound:
    def test_x_zero_perfect(self):
        assert hsz_bound(9, 3, 0) == 3
        assert hsz_bound(10, 2, 0) == 5

    def test_vanishing_at_critical_x(self):
        assert hsz_bound(9, 3, Fraction(1, 6)) == 0

    def test_clipped_below_zero(self):
        assert hsz_bound(9, 3, Fraction(1, 2)) == 0

    def test_ceiling_for_fractional_values(self):
        # (1 - 6/9) * 3 = 1 exactly; (1 - 6*(1/12)) * 3 = 1.5 -> 2
        assert hsz_bound(9, 3, Fraction(1, 9)) == 1
        assert hsz_bound(9, 3, Fraction(1, 12)) == 2

    def test_validation(self):
        with pytest.raises(ValueError):
            hsz_bound(1, 3, 0)
        with pytest.raises(ValueError):
            hsz_bound(9, 3, 1)


class TestVerify:
    def test_complete_k9(self):
        rep = verify_hsz(complete(9), 3)
        assert rep.passed and rep.matching_size == 3 and rep.bound == 3

    def test_extremal(self):
        rep = verify_hsz(hsz_extremal(9, 3), 3)
        assert rep.min_degree == 5
        assert rep.x == Fraction(1, 9)
        assert rep.bound == 1
        assert rep.matching_size == 2
        assert rep.passed

    def test_families(self):
        graphs = [complete_tripartite(3, 3, 3), nash_williams_tripartite(12),
                  hsz_extremal(12, 3), planted_sparse(12, "two", 0.0, 0),
                  planted_sparse(12, "one", 0.05, 1)]
        for g in graphs:
            for k in (2, 3):
                assert verify_hsz(g, k).passed, (g, k)

    def test_random_instances(self):
        # a failing case would be an implementation bug; log it verbatim
        for seed in range(100):
            n = 6 + seed % 7
            q = (seed % 9 + 1) / 10
            g = gnq(n, q, seed)
            for k in (2, 3):
                rep = verify_hsz(g, k)
                assert rep.passed, (
                    f"counterexample?! n={n} q={q} seed={seed} k={k} "
                    f"delta={rep.min_degree} bound={rep.bound} "
                    f"matching={rep.matching_size} edges={g.edges()}")
