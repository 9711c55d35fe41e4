"""
Green's relations of small semigroups
=====================================

Build a few catalog semigroups, print their J-classes and check which
elements generate a group.
"""

from subpower import catalog, generates_group

# the Brandt semigroup: four pairs [i,j] and a zero
B2 = catalog("brandt_b2").semigroup
g = B2.greens
for cls in g.classes("j"):
    print("J-class:", [B2.name(x) for x in cls])

# [1,2] squares to 0, so it does not generate a group
for x in range(B2.size):
    print(B2.name(x), "generates a group" if generates_group(B2, x) else "does not generate a group")

# in T_3 the J-classes are the rank classes
T3 = catalog("full_transformation:3").semigroup
sizes = {len(set(T3.name(c[0]))): len(c) for c in T3.greens.classes("j")}
print("T3 J-class sizes by rank:", dict(sorted(sizes.items())))

# the J-order: rank 1 maps lie below everything else
const, ident = T3.index("111"), T3.index("123")
print("111 <J 123:", T3.greens.j_less(const, ident))
