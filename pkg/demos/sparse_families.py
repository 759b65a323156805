"""Sparse families: partial 2-trees into the P21 targets, low-mad graphs into Walecki targets."""
from chromix import GenSpec, Signature, find_hom, is_homomorphism, mad, random_low_mad, random_partial_2tree
from chromix import t03, t11, two_tree_hom, underlying, walecki_target
from chromix.generators import low_mad_threshold, subdivided_skeleton
from chromix.solver import circular_hom
import random

for sig, target in ((Signature(0, 3), t03()), (Signature(1, 1), t11())):
    g = random_partial_2tree(250, GenSpec(seed=7, signature=sig))
    hom = two_tree_hom(g, target)
    print(sig, "partial 2-tree with", len(underlying(g).edges), "edges ->",
          len(set(hom.mapping)), "distinct images, valid:", bool(is_homomorphism(hom)))

for sig in (Signature(1, 0), Signature(0, 3)):
    g = random_low_mad(60, GenSpec(seed=3, signature=sig))
    print(sig, "low-mad graph: mad =", mad(underlying(g)), "<", low_mad_threshold(sig),
          "-> walecki:", find_hom(g, walecki_target(sig)) is not None)

# long chains also give high girth, and those graphs map onto C_5
und = subdivided_skeleton(60, 5, random.Random(1))
print("C5 map of a subdivided cubic graph:", circular_hom(und, 2)[:12], "...")
