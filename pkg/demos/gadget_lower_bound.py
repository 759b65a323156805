"""The K_k special 2-path gadget against the 15-vertex (0,3) target.

Replacing each edge of K_k by a special 2-path forces the k original vertices
to pairwise distinct images.
"""
import time

from chromix import Signature, conflict_relation, exact_chromatic, find_hom, kclique_gadget, t03
from chromix.solver import chromatic_oracle

sig = Signature(0, 3)
for k in (4, 8, 12, 15, 16):
    g = kclique_gadget(k, sig)
    rel = conflict_relation(g)
    forced = sum((u, w) in rel for u in range(k) for w in range(u + 1, k))
    print(f"k={k:2d}: {g.num_vertices:3d} vertices, {forced} of {k * (k - 1) // 2} original pairs in conflict")

t0 = time.time()
print("gadget(16) -> t03:", find_hom(kclique_gadget(16, sig), t03()), f"({time.time() - t0:.2f}s)")
hom = find_hom(kclique_gadget(8, sig), t03())
print("gadget(8) -> t03 originals land on", hom.mapping[:8])

# small cases: exact value against the brute-force partition count
for s in (Signature(1, 0), Signature(0, 2)):
    g = kclique_gadget(3, s)
    k, cert = exact_chromatic(g)
    print(s, "gadget(3): chi =", k, " oracle =", chromatic_oracle(g), " classes:", cert.partition)
