"""
The split quadric Q^6
=====================

Multiplication and Steenrod squares on the h/l basis, with d = 3.
"""

from oglab.quadric import Quadric

Q = Quadric(3)
print("basis:", ", ".join(Q.format(frozenset({b})) for b in Q.basis))

# h^3 splits into the two families of maximal linear subspaces
print("h^3 =", Q.format(Q.hpow(3)))

# for odd d the two middle classes meet in a point and each squares to zero
l3, l3p = Q.cls(("l", 3)), Q.cls(("l'", 3))
print("l_3 * l'_3 =", Q.format(Q.mul(l3, l3p)))
print("l_3 * l_3  =", Q.format(Q.mul(l3, l3)))

# total Steenrod square of each linear class
for s in range(4):
    x = Q.cls(("l", s))
    print(f"S(l_{s}) =", Q.format(Q.steenrod(x)))
