"""
Bookkeeping for OG(2^r, 2^r v)
==============================

Cell counts of the decomposition, the Tate shifts it singles out, the mod-4
congruence and symmetrized projectors built from random correspondences.
"""

import numpy as np


from oglab import motiva
from oglab.quadric import Quadric

p = motiva.Params(2, 3)
print(f"r=2 v=3: dim X {p.dim_x}, dim Y {p.dim_y}, n {p.n}, bound {p.gras_threshold}")
print(motiva.verify_poincare_identity(2, 3).params)
print(motiva.verify_counts(2, 3).params["shifts"])

print("\nn against the bound for r = 1:")
for v in range(3, 9):
    q = motiva.Params(1, v)
    print(f"  v={v}: n={q.n:3d} bound={q.gras_threshold:3d}")

rep = motiva.corsim_check(20, [3, 11], seed=0, trials=1000)
print("\nresidues of deg mod 4 with two diagonal entries:", rep.params["residues"])

X = motiva.SplitVariety.from_quadric(Quadric(3))
f = motiva.random_correspondence(X, np.random.default_rng(1))
l, proj = motiva.idem_power(motiva.corr_compose(motiva.corr_transpose(f), f))
print(f"(f^t f)^{l} symmetric {proj.is_symmetric()} idempotent {proj.is_idempotent()}")
