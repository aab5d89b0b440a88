"""
The Chow ring of OG(2, 12) mod 2
================================

Derive a presentation, compare its ranks with the Weyl group count, and
compute the Steenrod square that sits exactly on the dimension bound.
"""

from oglab.ogcalc import og_ring, steenrod_action
from oglab.weylcomb import og_poincare

og = og_ring(5, 1)
print("generators:", " ".join(g.name for g in og.ring.generators))
print("ranks:     ", og.ranks)
print("cells:     ", list(og_poincare(2, 12).coeffs))
print("complete:  ", og.complete, " total", sum(og.ranks))

act = steenrod_action(5, 1)
x = og.parse("z4*z5")
y = act.apply(x, 8)
print("S^8(z4*z5) =", og.ring.format(y), " degree", og.og_degree(y))

# generators of w type stay at level 0, z generators at level <= 1
for name in ("w1", "z4", "z9"):
    print(f"S({name}) =", og.ring.format(act.value(name)))
