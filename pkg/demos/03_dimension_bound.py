"""
Steenrod operations vanish high up
==================================

For each small OG(m+1, 2d+2), S^i kills every class of dimension i once i
exceeds (d-m)(m+1).  One step below the bound the statement can fail.
"""

from oglab.ogcalc import gras_threshold, verify_gras

for d, m in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 1), (5, 3)]:
    rep = verify_gras(d, m)
    print(f"OG({m + 1},{2 * d + 2}) bound {gras_threshold(d, m):2d}  "
          f"checked {rep.params['checked']:3d}  {rep.status}")

rep = verify_gras(5, 1, min_dim=8)
print("\nlowering the bound to 8 in OG(2,12):", rep.status)
for w in rep.witnesses[:3]:
    print("  ", w)
