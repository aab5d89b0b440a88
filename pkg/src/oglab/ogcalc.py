"""Mod-2 Chow ring of the split isotropic Grassmannian OG(m+1, 2d+2).

The ring is presented on the classes ``w_i`` (pushforwards of hyperplane
powers from the incidence flag variety ``Phi``) and ``z_i`` (pushforwards of
linear subspaces of the quadric).  Relations are derived from the projective
bundle ``Phi = P(U) -> G``: with ``xi`` the pullback of the hyperplane class,
every quadric class pulls back to a polynomial of degree <= m in ``xi`` over
Ch(G), and this expansion must be compatible with pushforward and with
products.  The resulting presentation is trusted only when its graded ranks
match the Weyl group cell count (the rank gate).

The Steenrod action on the generators is computed through the pushforward
formula ``S(f_* a) = f_*(S(a) c(-T_f))`` for ``f: Phi -> G``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb

from .gf2core import Element, FreeAlgebra, Generator, PresentedRing, iter_bits
from .quadric import Quadric
from .report import Report
from .weylcomb import og_poincare


class IncompleteRingError(RuntimeError):
    """Raised when a verifier is handed a ring that failed the rank gate."""


def og_dim(d: int, m: int) -> int:
    return (d - m) * (m + 1) + (m + 1) * (2 * d - m) // 2


def og_generators(d: int, m: int) -> list[Generator]:
    gens = [Generator(f"w{i}", i, 0) for i in range(1, d - m + 1)]
    gens += [Generator(f"z{i}", i, 1) for i in range(d - m, 2 * d - m + 1)]
    return gens


def _check_dm(d: int, m: int) -> None:
    if d < 1 or not 0 <= m <= d - 1:
        raise ValueError(f"need d >= 1 and 0 <= m <= d-1, got d={d}, m={m}")


class XiPoly:
    """Polynomial in xi with coefficients in Ch(G), stored low power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)

    def __getitem__(self, t: int) -> Element:
        return self.coeffs[t]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "XiPoly") -> "XiPoly":
        n = max(len(self), len(other))
        a = self.coeffs + [Element()] * (n - len(self))
        b = other.coeffs + [Element()] * (n - len(other))
        return XiPoly([x + y for x, y in zip(a, b)])

    def __eq__(self, other) -> bool:
        return isinstance(other, XiPoly) and self.coeffs == other.coeffs

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        return f"XiPoly({self.coeffs!r})"


class FlagCalculus:
    """Projective bundle calculus of Phi = P(U) over G, mod 2.

    ``alg`` supplies ``mul``/``add``; use a :class:`FreeAlgebra` while deriving
    relations and the finished :class:`PresentedRing` for Steenrod values.
    """

    def __init__(self, d: int, m: int, alg: FreeAlgebra):
        _check_dm(d, m)
        self.d, self.m = d, m
        self.alg = alg
        self.topdeg = og_dim(d, m)
        self.quadric = Quadric(d)
        one = alg.one()
        top = self.topdeg + m + 1
        # quotient bundle Chern classes: w_i up to d-m, even (so zero) beyond
        self.cbar = [one] + [alg.gen(f"w{i}") if i <= d - m else Element()
                             for i in range(1, top + 1)]
        cu = [one]
        for k in range(1, top + 1):
            acc = Element()
            for j in range(1, k + 1):
                if self.cbar[j]:
                    acc = acc + alg.mul(self.cbar[j], cu[k - j])
            cu.append(acc)
        self.cU = cu

    def cbar_at(self, k: int) -> Element:
        if k < 0 or k >= len(self.cbar):
            return Element()
        return self.cbar[k]

    # -- xi polynomials -----------------------------------------------------

    def xi_zero(self) -> XiPoly:
        return XiPoly([Element()] * (self.m + 1))

    def xi_const(self, e: Element) -> XiPoly:
        p = self.xi_zero()
        p.coeffs[0] = e
        return p

    def xi_power(self, t: int) -> XiPoly:
        raw = [Element()] * (t + 1)
        raw[t] = self.alg.one()
        return self.reduce(raw)

    def reduce(self, coeffs) -> XiPoly:
        """Reduce by sum_k cU_k xi^(m+1-k) = 0 down to degree <= m."""
        m = self.m
        c = list(coeffs) + [Element()] * max(0, m + 1 - len(coeffs))
        for p in range(len(c) - 1, m, -1):
            lead = c[p]
            if not lead:
                continue
            c[p] = Element()
            for k in range(1, m + 2):
                if self.cU[k]:
                    c[p - k] = c[p - k] + self.alg.mul(lead, self.cU[k])
        return XiPoly(c[: m + 1])

    def mul(self, a: XiPoly, b: XiPoly) -> XiPoly:
        raw = [Element()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    raw[i + j] = raw[i + j] + self.alg.mul(x, y)
        return self.reduce(raw)

    def push_xi(self, P: XiPoly) -> Element:
        """Pushforward along Phi -> G: xi^(m+k) * y maps to cbar_k * y."""
        acc = Element()
        for t, g in enumerate(P.coeffs):
            if g and t >= self.m:
                acc = acc + self.alg.mul(self.cbar_at(t - self.m), g)
        return acc

    # -- quadric classes ------------------------------------------------------

    def known_push(self, x: frozenset) -> Element:
        """Pushforward to G of the pullback of a quadric class."""
        d, m, alg = self.d, self.m, self.alg
        acc = Element()
        for kind, k in x:
            if kind == "h":
                if k == m:
                    acc = acc + alg.one()
                elif k > m:
                    acc = acc + alg.gen(f"w{k - m}")
            elif kind == "l":
                acc = acc + alg.gen(f"z{2 * d - m - k}")
            else:
                acc = acc + alg.gen(f"z{d - m}") + alg.gen(f"w{d - m}")
        return acc

    def pull_expand(self, x: frozenset) -> XiPoly:
        """Coefficients g_t with pullback(x) = sum_t xi^t g_t."""
        m, Q = self.m, self.quadric
        g = [Element()] * (m + 1)
        hb = Q.one
        for b in range(m + 1):
            t = m - b
            acc = self.known_push(Q.mul(hb, x))
            for s in range(t + 1, m + 1):
                cb = self.cbar_at(s + b - m)
                if cb and g[s]:
                    acc = acc + self.alg.mul(cb, g[s])
            g[t] = acc
            hb = Q.mul(hb, Q.h)
        return XiPoly(g)

    def pull_total(self, x: frozenset) -> XiPoly:
        out = self.xi_zero()
        for lab in sorted(x, key=self.quadric.basis.index):
            out = out + self._pull_basis(lab)
        return out

    def _pull_basis(self, lab) -> XiPoly:
        cache = self.__dict__.setdefault("_pull_cache", {})
        if lab not in cache:
            cache[lab] = self.pull_expand(frozenset({lab}))
        return cache[lab]

    # -- relative tangent bundle ----------------------------------------------

    def chern_hom_LU(self) -> XiPoly:
        """Total Chern class of Hom(L, U) = U (x) L^dual, c_1(L^dual) = xi."""
        m = self.m
        raw = [Element()] * (m + 2)
        for k in range(m + 2):
            for j in range(k + 1):
                if comb(m + 1 - j, k - j) % 2 and self.cU[j]:
                    raw[k - j] = raw[k - j] + self.cU[j]
        return self.reduce(raw)

    def inverse(self, P: XiPoly) -> XiPoly:
        """Inverse of 1 + (nilpotent) in Ch(Phi)."""
        one = self.xi_const(self.alg.one())
        if P.coeffs[0].terms & one.coeffs[0].terms != one.coeffs[0].terms:
            raise ValueError("series must have constant term 1")
        nil = P + one
        out, term = one, one
        for _ in range(self.topdeg + self.m + 1):
            term = self.mul(term, nil)
            if not term:
                break
            out = out + term
        return out

    @cached_property
    def c_minus_T(self) -> XiPoly:
        return self.inverse(self.chern_hom_LU())


# -- relations ----------------------------------------------------------------

def _zsquare_rhs(d: int, m: int, alg: FreeAlgebra, i: int) -> Element:
    rhs = Element()
    for k in range(0, 2 * d - m - i + 1):
        j = i - k
        if j == 0:
            c = alg.one()
        elif 1 <= j <= d - m:
            c = alg.gen(f"w{j}")
        else:
            continue
        rhs = rhs + alg.mul(alg.gen(f"z{i + k}"), c)
    return rhs


def zsquare_rules(d: int, m: int, alg: FreeAlgebra) -> dict[int, Element]:
    """z_i^2 = sum_{k>=0} z_{i+k} c_{i-k}, with c_j = w_j for j <= d-m and 0 otherwise."""
    return {alg.index[f"z{i}"]: _zsquare_rhs(d, m, alg, i)
            for i in range(d - m, 2 * d - m + 1)}


def zsquare_relation(d: int, m: int, alg: FreeAlgebra, i: int) -> Element:
    """z_i^2 + sum_{k>=0} z_{i+k} c_{i-k} as an element of ``alg``."""
    z = alg.gen(f"z{i}")
    return alg.mul(z, z) + _zsquare_rhs(d, m, alg, i)


def derive_relations(d: int, m: int, prereduce: bool = True) -> tuple[list[Element], FreeAlgebra]:
    """Truncation, overdetermination and multiplicativity relations."""
    _check_dm(d, m)
    gens = og_generators(d, m)
    top = og_dim(d, m)
    probe = FreeAlgebra(gens, top)
    alg = FreeAlgebra(gens, top, zsquare_rules(d, m, probe) if prereduce else None)
    fc = FlagCalculus(d, m, alg)
    Q = fc.quadric
    rels: list[Element] = []

    # rank of U is m+1
    for k in range(m + 2, top + 1):
        rels.append(fc.cU[k])

    pulls = {lab: fc.pull_expand(frozenset({lab})) for lab in Q.basis}

    for lab in Q.basis:
        x = frozenset({lab})
        g = pulls[lab]
        for b in range(m + 1, 2 * d + 1):
            hb = Q.hpow(b)
            acc = fc.known_push(Q.mul(hb, x))
            for t in range(m + 1):
                cb = fc.cbar_at(t + b - m)
                if cb and g[t]:
                    acc = acc + alg.mul(cb, g[t])
            rels.append(acc)

    basis = Q.basis
    for a_i, a in enumerate(basis):
        for b in basis[a_i:]:
            if Q.codim(a) + Q.codim(b) > Q.dim:
                continue
            prod = fc.mul(pulls[a], pulls[b])
            rhs = fc.xi_zero()
            for lab in Q.mul(frozenset({a}), frozenset({b})):
                rhs = rhs + pulls[lab]
            rels.extend((prod + rhs).coeffs)

    seen = set()
    out = []
    for r in rels:
        for part in alg.parts(r).values():
            if alg.codim(next(iter(part.terms))) > top:
                continue
            if part and part.terms not in seen:
                seen.add(part.terms)
                out.append(part)
    return out, alg


# -- the ring -----------------------------------------------------------------

@dataclass
class OGRing:
    d: int
    m: int
    ring: PresentedRing
    expected: list[int]
    prereduced: bool = True

    @property
    def topdeg(self) -> int:
        return self.ring.topdeg

    @property
    def ranks(self) -> list[int]:
        return self.ring.poincare()

    @property
    def complete(self) -> bool:
        return self.ranks == self.expected

    def deficit(self) -> dict[int, int]:
        """Per-codim excess of presented rank over the cell count."""
        exp = self.expected + [0] * (len(self.ranks) - len(self.expected))
        return {c: r - e for c, (r, e) in enumerate(zip(self.ranks, exp)) if r != e}

    def require_complete(self) -> None:
        if not self.complete:
            raise IncompleteRingError(
                f"OG({self.m + 1},{2 * self.d + 2}) presentation failed the rank gate: "
                f"deficit {self.deficit()}")

    def gen(self, name: str) -> Element:
        return self.ring.gen(name)

    def parse(self, expr: str) -> Element:
        """Product of generator tokens separated by '*', e.g. ``z4*z5``."""
        out = self.ring.one()
        for tok in expr.replace(" ", "").split("*"):
            if not tok:
                raise ValueError(f"bad expression {expr!r}")
            out = self.ring.mul(out, self.gen(tok))
        return out

    def z_prime(self) -> Element:
        k = self.d - self.m
        return self.gen(f"z{k}") + self.gen(f"w{k}")

    def dictionary(self, x: frozenset) -> Element:
        """Image of a quadric class under pushforward of its pullback."""
        return self.ring.normal_form(FlagCalculus(self.d, self.m, self.ring).known_push(x))

    def og_degree(self, e: Element) -> int:
        self.require_complete()
        c = self.ring.homogeneous_codim(e)
        if c is not None and c != self.topdeg:
            raise ValueError("degree is only defined on the top codimension")
        return 0 if self.ring.is_zero(e) else 1

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m, "expected": self.expected,
                "prereduced": self.prereduced, **self.ring.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "OGRing":
        return cls(data["d"], data["m"], PresentedRing.from_json(data),
                   list(data["expected"]), data["prereduced"])


def expected_ranks(d: int, m: int) -> list[int]:
    return list(og_poincare(m + 1, 2 * d + 2).coeffs)


def build_og_ring(d: int, m: int, prereduce: bool = True) -> OGRing:
    rels, alg = derive_relations(d, m, prereduce)
    ring = PresentedRing(alg.generators, rels, alg.topdeg, alg.square_rules)
    return OGRing(d, m, ring, expected_ranks(d, m), prereduce)


@lru_cache(maxsize=None)
def og_ring(d: int, m: int) -> OGRing:
    """Memoized ring (in-process); see :mod:`oglab.cache` for the disk cache."""
    return build_og_ring(d, m)


# -- Steenrod operations --------------------------------------------------------

@dataclass
class SteenrodAction:
    """Total Steenrod values on generators plus memoized values on monomials."""

    og: OGRing
    table: dict[str, dict[int, int]]
    _mono_cache: dict = field(default_factory=dict, repr=False)

    @property
    def ring(self) -> PresentedRing:
        return self.og.ring

    def value(self, name: str) -> Element:
        return self.ring.from_vecs(self.table[name])

    def total_mono(self, mono) -> dict[int, int]:
        hit = self._mono_cache.get(mono)
        if hit is not None:
            return hit
        ring = self.ring
        j = next((k for k, e in enumerate(mono) if e), None)
        if j is None:
            out = {0: 1}
        else:
            rest = list(mono)
            rest[j] -= 1
            out = ring.vecs_mul(self.total_mono(tuple(rest)),
                                self.table[ring.generators[j].name])
        self._mono_cache[mono] = out
        return out

    def total(self, e: Element) -> dict[int, int]:
        out: dict[int, int] = {}
        for t in e.terms:
            for c, v in self.total_mono(t).items():
                out[c] = out.get(c, 0) ^ v
        return {c: v for c, v in out.items() if v}

    def apply(self, e: Element, i: int) -> Element:
        """Component S^i(e) of codim codim(e) + i."""
        if i < 0:
            raise ValueError("Steenrod index must be >= 0")
        ring = self.ring
        ring.check(e)
        c = ring.homogeneous_codim(e)
        if c is None:
            return Element()
        v = self.total(e).get(c + i, 0)
        return ring.from_vec(c + i, v) if v else Element()

    def to_json(self) -> dict:
        ring = self.ring
        return {name: [ring.serialize_monomial(t) for t in sorted(self.value(name).terms)]
                for name in self.table}

    @classmethod
    def from_json(cls, og: OGRing, data: dict) -> "SteenrodAction":
        ring = og.ring
        table = {name: ring.to_vec(Element(ring.parse_monomial(t) for t in terms))
                 for name, terms in data.items()}
        return cls(og, table)


def compute_steenrod_action(og: OGRing) -> SteenrodAction:
    og.require_complete()
    d, m, ring = og.d, og.m, og.ring
    fc = FlagCalculus(d, m, ring)
    Q = fc.quadric
    cmt = fc.c_minus_T
    table = {}
    for g in ring.generators:
        idx = int(g.name[1:])
        if g.name[0] == "w":
            x = Q.hpow(m + idx)
        else:
            s = 2 * d - m - idx
            x = frozenset({("l", s)})
        sx = Q.steenrod(x)
        val = fc.push_xi(fc.mul(fc.pull_total(sx), cmt))
        table[g.name] = ring.to_vec(val)
    return SteenrodAction(og, table)


@lru_cache(maxsize=None)
def steenrod_action(d: int, m: int) -> SteenrodAction:
    return compute_steenrod_action(og_ring(d, m))


def steenrod_apply(action: SteenrodAction, e: Element, i: int) -> Element:
    return action.apply(e, i)


# -- verifiers ------------------------------------------------------------------

def gras_threshold(d: int, m: int) -> int:
    return (d - m) * (m + 1)


def verify_gras(d: int, m: int, og: OGRing | None = None,
                action: SteenrodAction | None = None, min_dim: int | None = None) -> Report:
    """S^i kills Ch_i(G) for every dimension i above (d-m)(m+1)."""
    t0 = time.perf_counter()
    params = {"d": d, "m": m}
    og = og or og_ring(d, m)
    if not og.complete:
        return Report.refused("gras", params, og.deficit(), t0)
    action = action or compute_steenrod_action(og)
    ring = og.ring
    lo = gras_threshold(d, m) + 1 if min_dim is None else min_dim
    witnesses = []
    checked = 0
    for i in range(lo, og.topdeg + 1):
        c = og.topdeg - i
        basis, _ = ring.graded_component(c)
        for mono in basis:
            x = Element(frozenset({mono}))
            checked += 1
            val = action.apply(x, i)
            if val:
                witnesses.append({"dim": i, "element": ring.format(x),
                                  "steenrod": ring.format(val)})
            if not ring.member_level_span(x, m):
                witnesses.append({"dim": i, "element": ring.format(x),
                                  "level_exceeds": m})
    params = {**params, "dims": [lo, og.topdeg], "checked": checked}
    return Report.from_witnesses("gras", params, witnesses, t0)


def verify_example(og: OGRing | None = None, action: SteenrodAction | None = None) -> Report:
    """In OG(2,12): S^8(z_4 z_5) is the nonzero point class mod 2."""
    t0 = time.perf_counter()
    og = og or og_ring(5, 1)
    params = {"d": 5, "m": 1, "element": "z4*z5", "i": 8}
    if not og.complete:
        return Report.refused("example", params, og.deficit(), t0)
    action = action or compute_steenrod_action(og)
    e = og.parse("z4*z5")
    codim = og.ring.homogeneous_codim(e)
    val = action.apply(e, 8)
    witnesses = []
    if codim != 9 or og.topdeg - codim != 8:
        witnesses.append({"codim": codim, "dim": og.topdeg - codim})
    if og.og_degree(val) != 1:
        witnesses.append({"steenrod8": og.ring.format(val)})
    params = {**params, "codim": codim, "dim": og.topdeg - codim,
              "value": og.ring.format(val)}
    return Report.from_witnesses("example", params, witnesses, t0)


def level(ring: PresentedRing, e: Element) -> int:
    """Smallest l with e in the level-l span (per homogeneous part)."""
    worst = 0
    for c, part in ring.parts(e).items():
        if c > ring.topdeg or ring.is_zero(part):
            continue
        lvl = 0
        while not ring.member_level_span(part, lvl):
            lvl += 1
        worst = max(worst, lvl)
    return worst


def vec_element(ring: PresentedRing, vecs: dict[int, int]) -> Element:
    return ring.from_vecs(vecs)


__all__ = [
    "FlagCalculus", "XiPoly", "OGRing", "SteenrodAction", "IncompleteRingError",
    "og_dim", "og_generators", "derive_relations", "build_og_ring", "og_ring",
    "compute_steenrod_action", "steenrod_action", "steenrod_apply", "verify_gras",
    "verify_example", "gras_threshold", "level", "zsquare_rules",
    "zsquare_relation", "expected_ranks", "iter_bits",
]
