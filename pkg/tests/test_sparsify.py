"""sparsify: determinism, coupling, distributional sanity."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trifactor.graph_core import Graph
from trifactor.sparsify import (SparsifyParams, edge_threshold, sparsify,
                                split_rounds, subsample_exact)


def complete(n):
    return Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


class TestSparsify:
    def test_p_one_is_identity(self):
        g = complete(12)
        assert sparsify(g, SparsifyParams(1.0, seed=3)) == g

    def test_p_zero_is_edgeless(self):
        g = complete(12)
        out = sparsify(g, SparsifyParams(0.0, seed=3))
        assert out.n == 12 and out.edge_count() == 0

    def test_k100_edge_count_within_3_sigma(self):
        # binomial oracle: mean 2475, sigma = sqrt(4950 * 0.25) = 35.18
        g = complete(100)
        m = sparsify(g, SparsifyParams(0.5, seed=7)).edge_count()
        assert abs(m - 2475) <= 3 * 35.18

    def test_determinism(self):
        g = complete(40)
        a = sparsify(g, SparsifyParams(0.37, seed=11))
        b = sparsify(g, SparsifyParams(0.37, seed=11))
        assert a == b
        c = sparsify(g, SparsifyParams(0.37, seed=12))
        assert a != c  # overwhelmingly likely for 780 edges

    @given(st.integers(0, 2**63), st.floats(0, 1), st.floats(0, 1))
    @settings(max_examples=40, deadline=None)
    def test_monotone_coupling(self, seed, p1, p2):
        lo, hi = min(p1, p2), max(p1, p2)
        g = complete(15)
        a = sparsify(g, SparsifyParams(lo, seed))
        b = sparsify(g, SparsifyParams(hi, seed))
        assert set(a.edges()) <= set(b.edges())

    def test_scalar_threshold_matches_bulk(self):
        g = complete(25)
        kept = set(sparsify(g, SparsifyParams(0.4, seed=5)).edges())
        for u, v in g.edges():
            assert ((u, v) in kept) == (edge_threshold(5, u, v, 0) < 0.4)

    def test_params_validated(self):
        with pytest.raises(ValueError):
            SparsifyParams(1.5, 0)
        with pytest.raises(ValueError):
            SparsifyParams(0.5, 0, round_count=0)


class TestSplitRounds:
    def test_single_round_equals_sparsify(self):
        g = complete(20)
        [only] = split_rounds(g, 0.45, 1, seed=2)
        assert only == sparsify(g, SparsifyParams(0.45, seed=2))

    def test_p_zero_rounds_edgeless(self):
        g = complete(10)
        for r in split_rounds(g, 0.0, 3, seed=1):
            assert r.edge_count() == 0

    def test_union_density_within_3_sigma(self):
        # union keeps an edge with prob 1 - (0.9)^3 = 0.271
        g = complete(60)
        rounds = split_rounds(g, 0.3, 3, seed=13)
        union = set()
        for r in rounds:
            union |= set(r.edges())
        m, q = 1770, 1 - 0.9**3
        sigma = math.sqrt(m * q * (1 - q))
        assert abs(len(union) - m * q) <= 3 * sigma

    def test_pairwise_overlap_within_4_sigma_k200(self):
        # rounds are independently seeded: overlap rate (p/3)^2 per edge
        g = complete(200)
        p = 0.6
        rounds = split_rounds(g, p, 3, seed=21)
        sets = [set(r.edges()) for r in rounds]
        m = g.edge_count()
        q = (p / 3) ** 2
        sigma = math.sqrt(m * q * (1 - q))
        for i in range(3):
            for j in range(i + 1, 3):
                overlap = len(sets[i] & sets[j])
                assert abs(overlap - m * q) <= 4 * sigma

    def test_union_subsumed_by_higher_p(self):
        g = complete(30)
        rounds = split_rounds(g, 0.5, 2, seed=3)
        assert all(isinstance(r, Graph) for r in rounds)


class TestSubsampleExact:
    def test_full_and_empty(self):
        edges = complete(8).edges()
        assert subsample_exact(edges, len(edges), seed=0) == set(edges)
        assert subsample_exact(edges, 0, seed=0) == set()

    def test_determinism(self):
        edges = complete(10).edges()
        a = subsample_exact(edges, 17, seed=9)
        b = subsample_exact(edges, 17, seed=9)
        assert a == b and len(a) == 17

    def test_order_independence(self):
        edges = complete(9).edges()
        a = subsample_exact(edges, 10, seed=4)
        b = subsample_exact(list(reversed(edges)), 10, seed=4)
        assert a == b

    def test_range_errors(self):
        edges = complete(5).edges()
        with pytest.raises(ValueError):
            subsample_exact(edges, len(edges) + 1, seed=0)
        with pytest.raises(ValueError):
            subsample_exact(edges, -1, seed=0)

    def test_uniformity_sanity(self):
        # each edge should land in roughly target/|E| of the subsets
        edges = complete(6).edges()  # 15 edges
        hits = {e: 0 for e in edges}
        trials = 600
        for seed in range(trials):
            for e in subsample_exact(edges, 5, seed=seed):
                hits[e] += 1
        expected = trials * 5 / 15
        sigma = math.sqrt(trials * (5 / 15) * (10 / 15))
        for e, h in hits.items():
            assert abs(h - expected) <= 5 * sigma
