from itertools import combinations

import pytest
from hypothesis import given, settings

from chromix.core import GraphBuilder, NmGraph, Signature, UndirectedGraph
from chromix.generators import kclique_gadget
from chromix.solver import p21_by_extension
from chromix.targets import t03, t11, walecki_cycle, walecki_target
from chromix.verify import (
    DomainError,
    Homomorphism,
    SizeGuardError,
    conflict_relation,
    expansion_ok,
    forbidden_config_free,
    has_p21,
    is_acyclic_coloring,
    is_homomorphism,
    p21_failure_is_genuine,
    regularity_check,
)

from conftest import complete, cycle, graph_from_edges, nmgraphs


def _expansion_failure_is_genuine(t, witness):
    s, a = witness
    nb = set().union(*(t.neighbors(x, a) for x in s))
    return 0 < len(s) < t.num_vertices and len(nb) <= len(s)


def _brute_conflicts(g):
    """Conflict pairs straight from the definition, by scanning every middle vertex and type pair."""
    sig = g.signature
    out = set()
    for u, w in combinations(g.vertices, 2):
        if g.adjacency(u, w) is not None:
            out.add((u, w))
            continue
        for v in g.vertices:
            for a in sig.view_types:
                for b in sig.view_types:
                    if a != b and v in g.neighbors(u, a) and v in g.neighbors(w, b):
                        out.add((u, w))
    return out


class TestIsHomomorphism:
    def test_identity(self):
        t = t03()
        assert is_homomorphism(Homomorphism(t, t, range(15)))

    def test_type_violation(self):
        t = t03()
        g = graph_from_edges(2, [(0, 1)], Signature(0, 3), 1)
        # (0,0)-(2,1) is a type-3 edge
        v = is_homomorphism(Homomorphism(g, t, (0, 7)))
        assert not v and v.witness == (0, 1, 1)

    def test_cycle_onto_first_walecki_cycle(self):
        sig = Signature(0, 2)
        t = walecki_target(sig)
        g = graph_from_edges(5, [(i, (i + 1) % 5) for i in range(5)], sig, 1)
        assert is_homomorphism(Homomorphism(g, t, walecki_cycle(2, 0).index_sequence()))
        assert not is_homomorphism(Homomorphism(g, t, walecki_cycle(2, 1).index_sequence()))

    def test_partial_map_rejected(self):
        t = t03()
        with pytest.raises(DomainError):
            is_homomorphism(Homomorphism(t, t, range(14)))
        with pytest.raises(DomainError):
            is_homomorphism(Homomorphism(t, t, [99] * 15))


class TestP21:
    def test_targets(self):
        assert has_p21(t03()) and has_p21(t11())

    def test_walecki_fails_with_genuine_witness(self):
        t = walecki_target(Signature(0, 2))
        v = has_p21(t)
        assert not v
        assert p21_failure_is_genuine(t, v.witness)

    @pytest.mark.parametrize(
        "make", [t03, t11, lambda: walecki_target(Signature(0, 2)), lambda: walecki_target(Signature(1, 0))]
    )
    def test_two_methods_agree(self, make):
        t = make()
        ok, witness = p21_by_extension(t)
        assert ok == bool(has_p21(t))
        if not ok:
            assert p21_failure_is_genuine(t, witness)

    def test_p21_implies_regularity_floor(self):
        # a common neighbour per (a, b) forces every adjacent vertex to have an a-neighbour
        for t in (t03(), t11()):
            assert all(len(t.neighbors(u, a)) >= 1 for u in t.vertices for a in t.signature.view_types)


class TestExpansion:
    @pytest.mark.parametrize("sig", [(0, 2), (1, 1)])
    def test_walecki(self, sig):
        assert expansion_ok(walecki_target(Signature(*sig)))

    def test_single_arc(self):
        t = NmGraph(Signature(1, 0), 2, arcs=[(0, 1, 2)])
        v = expansion_ok(t)
        assert not v and _expansion_failure_is_genuine(t, v.witness)
        # the head has no 2-neighbours at all
        assert _expansion_failure_is_genuine(t, ([1], 2))

    def test_guard(self):
        with pytest.raises(SizeGuardError):
            expansion_ok(NmGraph(Signature(0, 2), 25))


class TestRegularity:
    def test_walecki_03(self):
        assert regularity_check(walecki_target(Signature(0, 3)), 2)

    def test_witness(self):
        v = regularity_check(t03(), 3)
        assert not v and v.witness[2] == 4


class TestForbidden:
    def test_t03(self):
        assert forbidden_config_free(t03())

    def test_k4_type1(self):
        g = graph_from_edges(4, combinations(range(4), 2), Signature(0, 2), 1)
        v = forbidden_config_free(g)
        assert not v
        u, y, a, c, x, z = v.witness
        s = g.neighbors(u, a)
        assert {x, y, z} <= s and len({x, y, z}) == 3
        assert x in g.neighbors(y, c) and z in g.neighbors(y, c)

    def test_triangle_type3(self):
        g = graph_from_edges(3, combinations(range(3), 2), Signature(1, 1), 3)
        assert forbidden_config_free(g)


class TestConflict:
    def test_directed_path(self):
        g = NmGraph(Signature(1, 0), 3, arcs=[(0, 1, 2), (1, 2, 2)])
        assert (0, 2) in conflict_relation(g)

    def test_converging_arcs(self):
        g = NmGraph(Signature(1, 0), 3, arcs=[(0, 1, 2), (2, 1, 2)])
        rel = conflict_relation(g)
        assert (0, 2) not in rel and (2, 1) in rel

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_gadget_complete(self, k):
        rel = conflict_relation(kclique_gadget(k, Signature(0, 3)))
        assert all((u, w) in rel for u, w in combinations(range(k), 2))

    @settings(max_examples=60)
    @given(nmgraphs(max_vertices=6))
    def test_matches_definition(self, g):
        assert set(conflict_relation(g).pairs) == _brute_conflicts(g)


class TestAcyclicColoring:
    def test_tree_bipartition(self):
        tree = UndirectedGraph(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
        assert is_acyclic_coloring(tree, [0, 1, 1, 0, 0, 0])

    def test_c4_two_colours(self):
        v = is_acyclic_coloring(cycle(4), [0, 1, 0, 1])
        assert not v and v.witness[0] == "cycle"

    def test_c4_three_colours(self):
        assert is_acyclic_coloring(cycle(4), [0, 1, 0, 2])

    def test_improper(self):
        v = is_acyclic_coloring(complete(3), [0, 0, 1])
        assert not v and v.witness == ("improper", 0, 1)

    def test_domain(self):
        with pytest.raises(DomainError):
            is_acyclic_coloring(cycle(4), [0, 1])


def test_builder_graph_equal_to_direct():
    b = GraphBuilder(Signature(1, 0), 2)
    b.set_adjacency(1, 0, 1)
    assert b.build() == NmGraph(Signature(1, 0), 2, arcs=[(0, 1, 2)])
