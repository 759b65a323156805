import random
from fractions import Fraction
from itertools import combinations

import pytest

from chromix.core import Signature, underlying
from chromix.generators import (
    GenSpec,
    kclique_gadget,
    low_mad_threshold,
    random_forest_union,
    random_low_mad,
    random_partial_2tree,
    random_typed,
    subdivided_skeleton,
)
from chromix.solver import elimination_order
from chromix.sparsity import arboricity, mad
from chromix.verify import conflict_relation

from conftest import SIGNATURES


class TestGadget:
    def test_shape(self):
        g = kclique_gadget(5, Signature(1, 1))
        assert g.num_vertices == 5 + 10
        und = underlying(g)
        assert all(und.degree(x) == 2 for x in range(5, 15))
        assert all(und.degree(u) == 4 for u in range(5))

    def test_middle_types(self):
        g = kclique_gadget(4, Signature(0, 2))
        for x in range(4, g.num_vertices):
            (u, a), (w, b) = sorted((v, g.adjacency(v, x)) for v in g.neighbors(x))
            assert u < w and (a, b) == (1, 2)

    def test_k2_is_special_path(self):
        g = kclique_gadget(2, Signature(1, 0))
        assert g.num_vertices == 3 and (0, 1) in conflict_relation(g)

    @pytest.mark.parametrize("sig", SIGNATURES)
    def test_conflict_complete(self, sig):
        rel = conflict_relation(kclique_gadget(7, sig))
        assert all((u, w) in rel for u, w in combinations(range(7), 2))

    def test_errors(self):
        with pytest.raises(ValueError):
            kclique_gadget(1, Signature(0, 2))


class TestPartial2Tree:
    def test_two_vertices(self):
        g = random_partial_2tree(2, GenSpec(0, Signature(0, 3)))
        assert len(g.arcs) + len(g.edges) == 1

    @pytest.mark.parametrize("seed", range(5))
    def test_recognised(self, seed):
        g = random_partial_2tree(200, GenSpec(seed, Signature(0, 3)))
        assert elimination_order(underlying(g)) is not None

    def test_deterministic(self):
        spec = GenSpec(11, Signature(1, 1))
        assert random_partial_2tree(80, spec) == random_partial_2tree(80, spec)
        assert random_partial_2tree(80, spec) != random_partial_2tree(80, GenSpec(12, Signature(1, 1)))

    def test_delete_prob_zero_gives_2tree(self):
        g = random_partial_2tree(30, GenSpec(1, Signature(0, 2), delete_prob=0.0))
        assert len(underlying(g).edges) == 2 * 30 - 3


class TestLowMad:
    def test_threshold(self):
        assert low_mad_threshold(Signature(0, 2)) == Fraction(16, 7)

    @pytest.mark.parametrize("sig", SIGNATURES)
    def test_below_threshold(self, sig):
        for seed in range(3):
            g = random_low_mad(60, GenSpec(seed, sig))
            assert g.num_vertices == 60
            assert mad(underlying(g)) < low_mad_threshold(sig)

    def test_small_is_cycle(self):
        und = subdivided_skeleton(7, 4, random.Random(0))
        assert len(und.edges) == 7 and all(und.degree(v) == 2 for v in und.vertices)
        assert mad(und) == 2

    def test_skeleton_chains(self):
        und = subdivided_skeleton(90, 5, random.Random(3))
        assert und.num_vertices == 90
        assert max(und.degree(v) for v in und.vertices) <= 3
        # every branch vertex is separated from the next by at least five degree-2 vertices
        branch = [v for v in und.vertices if und.degree(v) == 3]
        for b in branch:
            for start in und.adj[b]:
                prev, cur, steps = b, start, 0
                while und.degree(cur) == 2:
                    prev, cur = cur, next(x for x in und.adj[cur] if x != prev)
                    steps += 1
                assert steps >= 5

    def test_deterministic(self):
        spec = GenSpec(5, Signature(1, 0))
        assert random_low_mad(50, spec) == random_low_mad(50, spec)


def test_forest_union_arboricity():
    for seed in range(10):
        g = random_forest_union(25, 3, seed)
        assert arboricity(g)[0] <= 3


def test_random_typed_uses_all_edges():
    und = random_forest_union(12, 2, 0)
    g = random_typed(und, Signature(1, 1), 0)
    assert underlying(g) == und
