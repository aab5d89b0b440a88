"""Mod-2 Chow ring of a split projective quadric of dimension 2d.

Basis classes are labelled ``("h", c)`` for the hyperplane powers
``h^c`` (0 <= c <= d-1), ``("l", s)`` for the linear subspaces ``l_s``
(0 <= s <= d) and ``("l'", d)`` for the second middle class.  A class is a
frozenset of labels.
"""

from __future__ import annotations

from functools import cached_property
from math import comb

QuadricClass = frozenset

ONE = ("h", 0)


def _sum(classes) -> frozenset:
    acc: frozenset = frozenset()
    for c in classes:
        acc = acc ^ c
    return acc


class Quadric:
    def __init__(self, d: int):
        if d < 1:
            raise ValueError("quadric dimension parameter d must be >= 1")
        self.d = d
        self.dim = 2 * d
        # l_d^2 is the point class exactly when d is even
        self.eps = 1 if d % 2 == 0 else 0

    @cached_property
    def basis(self) -> list:
        d = self.d
        return ([("h", c) for c in range(d)] + [("l", d), ("l'", d)]
                + [("l", s) for s in range(d - 1, -1, -1)])

    def codim(self, label) -> int:
        kind, k = label
        return k if kind == "h" else 2 * self.d - k

    def cls(self, *labels) -> frozenset:
        for lab in labels:
            if lab not in self.basis:
                raise ValueError(f"{lab} is not a basis class for d={self.d}")
        return _sum(frozenset({lab}) for lab in labels)

    @property
    def one(self) -> frozenset:
        return frozenset({ONE})

    @property
    def h(self) -> frozenset:
        return self.hpow(1)

    def hpow(self, c: int) -> frozenset:
        d = self.d
        if c < 0:
            raise ValueError("negative power")
        if c < d:
            return frozenset({("h", c)})
        if c == d:
            return frozenset({("l", d), ("l'", d)})
        return frozenset()

    def _mul_basis(self, a, b) -> frozenset:
        d = self.d
        if a[0] == "h" and b[0] == "h":
            return self.hpow(a[1] + b[1])
        if a[0] != "h" and b[0] == "h":
            a, b = b, a
        if a[0] == "h":
            c = a[1]
            if c == 0:
                return frozenset({b})
            s = b[1] - c
            return frozenset({("l", s)}) if s >= 0 else frozenset()
        if a[1] == d and b[1] == d:
            same = a[0] == b[0]
            hit = self.eps if same else 1 - self.eps
            return frozenset({("l", 0)}) if hit else frozenset()
        return frozenset()

    def mul(self, x: frozenset, y: frozenset) -> frozenset:
        acc: set = set()
        for a in x:
            for b in y:
                acc ^= self._mul_basis(a, b)
        return frozenset(acc)

    def part(self, x: frozenset, c: int) -> frozenset:
        return frozenset(lab for lab in x if self.codim(lab) == c)

    def _steen_basis(self, label) -> frozenset:
        kind, k = label
        if kind == "h":
            s_h = self.hpow(1) ^ self.hpow(2)
            out = self.one
            for _ in range(k):
                out = self.mul(out, s_h)
            return out
        # normal bundle of a linear P^s has total class (1+h)^(2d+1-s) mod 2
        out: set = set()
        for j in range(k + 1):
            if comb(2 * self.d + 1 - k, j) % 2:
                out.add((kind, k) if j == 0 else ("l", k - j))
        return frozenset(out)

    def steenrod(self, x: frozenset) -> frozenset:
        """Total Steenrod operation (an inhomogeneous class)."""
        return _sum(self._steen_basis(lab) for lab in x)

    def steenrod_part(self, x: frozenset, i: int) -> frozenset:
        if i < 0:
            raise ValueError("Steenrod index must be >= 0")
        out: set = set()
        for lab in x:
            out ^= self.part(self._steen_basis(lab), self.codim(lab) + i)
        return frozenset(out)

    def deg(self, x: frozenset) -> int:
        for lab in x:
            if self.codim(lab) != self.dim:
                raise ValueError("degree is only defined on the top codimension")
        return 1 if ("l", 0) in x else 0

    def gram(self) -> list[list[int]]:
        """Intersection pairing on the basis, deg(b_i * b_j) mod 2."""
        B = self.basis
        return [[1 if ("l", 0) in self.mul(frozenset({a}), frozenset({b})) else 0
                 for b in B] for a in B]

    def format(self, x: frozenset) -> str:
        if not x:
            return "0"
        order = {lab: i for i, lab in enumerate(self.basis)}
        words = []
        for kind, k in sorted(x, key=order.__getitem__):
            words.append(("1" if k == 0 else f"h^{k}") if kind == "h" else f"{kind}_{k}")
        return " + ".join(words)


def qring(d: int) -> Quadric:
    return Quadric(d)


def verify_axioms(d: int) -> list[dict]:
    """Cartan, squaring and instability failures of the Steenrod table (empty if sound)."""
    Q = Quadric(d)
    bad = []
    singles = [frozenset({b}) for b in Q.basis]
    for x in singles:
        for y in singles:
            lhs = Q.steenrod(Q.mul(x, y))
            rhs = Q.mul(Q.steenrod(x), Q.steenrod(y))
            if lhs != rhs:
                bad.append({"d": d, "cartan": [Q.format(x), Q.format(y)]})
    for x in singles:
        c = Q.codim(next(iter(x)))
        if Q.steenrod_part(x, 0) != x:
            bad.append({"d": d, "identity": Q.format(x)})
        if Q.steenrod_part(x, c) != Q.mul(x, x):
            bad.append({"d": d, "square": Q.format(x)})
        for i in range(c + 1, Q.dim + 1):
            if Q.steenrod_part(x, i):
                bad.append({"d": d, "unstable": Q.format(x), "i": i})
    return bad
