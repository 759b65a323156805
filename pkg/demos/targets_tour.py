"""Walk through the three explicit target graphs and what holds for them."""
from chromix import Signature, has_p21, expansion_ok, regularity_check, t03, t11, walecki_cycle, walecki_target
from chromix.verify import forbidden_config_free

# Walecki cycles for p = 3: three Hamiltonian cycles of K_7 sharing no edge
for j in range(3):
    print("C_%d:" % j, " ".join(map(str, walecki_cycle(3, j).sequence)))

for sig in (Signature(1, 0), Signature(0, 2), Signature(1, 1), Signature(0, 3)):
    t = walecki_target(sig)
    print(sig, "walecki: 2-regular per type =", bool(regularity_check(t, 2)),
          " expands =", bool(expansion_ok(t)), " P21 =", bool(has_p21(t)))

# the Walecki targets are too small for P21; the two bigger targets are not
v = has_p21(walecki_target(Signature(0, 2)))
print("first missing common neighbour in the 5-vertex target (u, v, a, b):", v.witness)

for name, t in (("t03", t03()), ("t11", t11())):
    print(name, t, "P21 =", bool(has_p21(t)), " forbidden-config free =", bool(forbidden_config_free(t)))
