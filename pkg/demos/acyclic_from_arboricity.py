"""Acyclic colouring built from a forest decomposition and per-layer quotients."""
from chromix import Signature, acyclic_coloring_construct, arboricity, digit_graphs, is_acyclic_coloring
from chromix.generators import random_forest_union
from chromix.sparsity import check_arb_bound, nash_williams

g = random_forest_union(24, 3, seed=2)
r, dec = arboricity(g)
print("24 vertices,", len(g.edges), "edges, arboricity", r)
for i, forest in enumerate(dec.forests(), 1):
    print(f"  F{i}: {len(forest)} edges")
small = random_forest_union(10, 3, seed=2)
print("on 10 vertices: matroid union", arboricity(small)[0], "vs brute force", nash_williams(small))

sig = Signature(0, 2)
layers = digit_graphs(g, dec, sig)
print("digit layers for", sig, ":", len(layers))

coloring, parts = acyclic_coloring_construct(g, sig)
ks = [h.target.num_vertices for _, h in parts]
print("layer chromatic numbers", ks, "-> palette", coloring.palette, "<= bound", max(ks) ** len(ks))
print("acyclic:", bool(is_acyclic_coloring(g, coloring)))

# the reverse direction: arboricity is bounded by the graph-level (0,2) chromatic number
from chromix import UndirectedGraph
k4 = UndirectedGraph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
print("K4 bound holds:", check_arb_bound(k4, sig))
