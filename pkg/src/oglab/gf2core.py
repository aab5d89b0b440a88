"""Graded commutative algebra over GF(2).

Elements are finite sets of exponent tuples (coefficients mod 2 are implicit).
A :class:`PresentedRing` takes a list of generators and homogeneous relations,
saturates the relation ideal degree by degree and row-reduces each graded
component with bit-packed rows, which gives canonical normal forms.

Generators that carry a square rewrite rule (``g**2 -> rhs``) are kept at
exponent <= 1 in every enumerated monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple  # exponent vector aligned with the ring's generator list


@dataclass(frozen=True)
class Generator:
    name: str
    codim: int
    zweight: int = 0

    def __post_init__(self):
        if self.codim < 1:
            raise ValueError(f"generator {self.name} must have positive codim")
        if self.zweight not in (0, 1):
            raise ValueError("zweight must be 0 or 1")


class Element:
    """Sparse mod-2 combination of monomials; adding a term twice cancels it."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Monomial] = ()):
        if isinstance(terms, frozenset):
            self.terms = terms
        else:
            acc: set = set()
            for t in terms:
                acc ^= {t}
            self.terms = frozenset(acc)

    def __add__(self, other: "Element") -> "Element":
        return Element(self.terms ^ other.terms)

    __sub__ = __add__

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(sorted(self.terms))

    def __repr__(self) -> str:
        return f"Element({sorted(self.terms)!r})"


ZERO = Element()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _lowbit_index(v: int) -> int:
    return (v & -v).bit_length() - 1


def iter_bits(v: int) -> Iterator[int]:
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


class Echelon:
    """Reduced row echelon form over GF(2) on Python ints.

    The pivot of a row is its lowest set bit and no other row has that bit set,
    so reducing a vector touches each of its pivot bits once.
    """

    def __init__(self):
        self.rows: dict[int, int] = {}
        self.mask = 0

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: int) -> int:
        hits = v & self.mask
        while hits:
            low = hits & -hits
            v ^= self.rows[low.bit_length() - 1]
            hits = v & self.mask
        return v

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        p = _lowbit_index(v)
        bit = 1 << p
        for q, row in self.rows.items():
            if row & bit:
                self.rows[q] = row ^ v
        self.rows[p] = v
        self.mask |= bit
        return True

    def hex_rows(self) -> list[str]:
        return [format(self.rows[p], "x") for p in sorted(self.rows)]

    @classmethod
    def from_hex_rows(cls, rows: Sequence[str]) -> "Echelon":
        ech = cls()
        for h in rows:
            v = int(h, 16)
            p = _lowbit_index(v)
            ech.rows[p] = v
            ech.mask |= 1 << p
        return ech


class FreeAlgebra:
    """Polynomials in the generators, truncated above ``topdeg``.

    ``square_rules`` maps a generator index ``j`` to the element that replaces
    ``g_j**2``; every rule must strictly lower the total weight of the ruled
    generators so that rewriting terminates.
    """

    def __init__(self, generators: Sequence[Generator], topdeg: int,
                 square_rules: Mapping[int, Element] | None = None):
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        self.generators = tuple(generators)
        self.topdeg = topdeg
        self.square_rules = dict(square_rules or {})
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self._codims = tuple(g.codim for g in self.generators)
        self._zw = tuple(g.zweight for g in self.generators)
        self._rewrite_cache: dict[Monomial, frozenset] = {}
        for j, rhs in self.square_rules.items():
            for t in rhs.terms:
                if self.codim(t) != 2 * self._codims[j]:
                    raise ValueError("square rule must be homogeneous")
                if t[j] >= 2:
                    raise ValueError("square rule must not reproduce the square")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def codim(self, mono: Monomial) -> int:
        return sum(e * c for e, c in zip(mono, self._codims))

    def zdeg(self, mono: Monomial) -> int:
        return sum(e * w for e, w in zip(mono, self._zw))

    def one(self) -> Element:
        return Element(frozenset({(0,) * self.ngens}))

    def gen(self, name: str) -> Element:
        if name not in self.index:
            raise KeyError(f"{name} is not a generator of this ring")
        mono = [0] * self.ngens
        mono[self.index[name]] = 1
        return Element(frozenset({tuple(mono)}))

    def monomial(self, exps: Mapping[str, int]) -> Monomial:
        mono = [0] * self.ngens
        for name, e in exps.items():
            if name not in self.index:
                raise KeyError(f"{name} is not a generator of this ring")
            mono[self.index[name]] += e
        return tuple(mono)

    def check(self, e: Element) -> None:
        for t in e.terms:
            if len(t) != self.ngens or min(t) < 0:
                raise ValueError(f"monomial {t} does not belong to this ring")

    def rewrite(self, mono: Monomial) -> frozenset:
        """Expand ``mono`` into monomials with ruled exponents <= 1."""
        hit = self._rewrite_cache.get(mono)
        if hit is not None:
            return hit
        if self.codim(mono) > self.topdeg:
            out = frozenset()
        else:
            for j in self.square_rules:
                if mono[j] >= 2:
                    break
            else:
                out = frozenset({mono})
                self._rewrite_cache[mono] = out
                return out
            rest = list(mono)
            rest[j] -= 2
            rest = tuple(rest)
            acc: set = set()
            for t in self.square_rules[j].terms:
                acc ^= self.rewrite(mono_mul(rest, t))
            out = frozenset(acc)
        self._rewrite_cache[mono] = out
        return out

    def reduce_squares(self, e: Element) -> Element:
        acc: set = set()
        for t in e.terms:
            acc ^= self.rewrite(t)
        return Element(frozenset(acc))

    def mul(self, a: Element, b: Element) -> Element:
        acc: set = set()
        top = self.topdeg
        for s in a.terms:
            cs = self.codim(s)
            for t in b.terms:
                if cs + self.codim(t) > top:
                    continue
                acc ^= self.rewrite(mono_mul(s, t))
        return Element(frozenset(acc))

    def add(self, *elems: Element) -> Element:
        acc: frozenset = frozenset()
        for e in elems:
            acc = acc ^ e.terms
        return Element(acc)

    def parts(self, e: Element) -> dict[int, Element]:
        """Split an element into homogeneous components keyed by codim."""
        out: dict[int, set] = {}
        for t in e.terms:
            out.setdefault(self.codim(t), set()).add(t)
        return {c: Element(frozenset(s)) for c, s in sorted(out.items())}

    def homogeneous_codim(self, e: Element) -> int | None:
        cs = {self.codim(t) for t in e.terms}
        if len(cs) > 1:
            raise ValueError("element is not homogeneous")
        return cs.pop() if cs else None

    def format(self, e: Element) -> str:
        if not e:
            return "0"
        words = []
        for t in sorted(e.terms, key=lambda t: (self.codim(t), t)):
            fac = []
            for g, k in zip(self.generators, t):
                if k == 1:
                    fac.append(g.name)
                elif k > 1:
                    fac.append(f"{g.name}^{k}")
            words.append("*".join(fac) or "1")
        return " + ".join(words)

    def serialize_monomial(self, mono: Monomial) -> list:
        return sorted([g.name, k] for g, k in zip(self.generators, mono) if k)

    def parse_monomial(self, pairs: Iterable) -> Monomial:
        return self.monomial({name: k for name, k in pairs})


@dataclass
class Component:
    codim: int
    monomials: list
    index: dict
    echelon: Echelon

    @property
    def rank(self) -> int:
        return len(self.monomials) - len(self.echelon)

    def basis(self) -> list:
        """Standard monomials: those that are not pivots of the relation span."""
        return [m for i, m in enumerate(self.monomials)
                if not (self.echelon.mask >> i) & 1]


class PresentedRing(FreeAlgebra):
    """Quotient of the free graded algebra by an ideal, computed per degree.

    Multiplication, normal forms and level membership are read-only once
    :meth:`build` has run.
    """

    def __init__(self, generators: Sequence[Generator], relations: Sequence[Element],
                 topdeg: int, square_rules: Mapping[int, Element] | None = None,
                 build: bool = True):
        super().__init__(generators, topdeg, square_rules)
        self.relations = [self.reduce_squares(r) for r in relations]
        self.relations = [r for r in self.relations if r]
        for r in self.relations:
            self.check(r)
            self.homogeneous_codim(r)
        self.components: dict[int, Component] = {}
        self._vec_cache: dict[Monomial, int] = {}
        self._nf_cache: dict[Monomial, int] = {}
        self._level_cache: dict[tuple[int, int], Echelon] = {}
        self._prod_cache: dict[tuple[int, int, int, int], int] = {}
        if build:
            self.build()

    # -- construction -----------------------------------------------------

    def enumerate_monomials(self, c: int) -> list:
        capped = set(self.square_rules)
        gens = self.generators
        out = []

        def rec(j, left, acc):
            if j == len(gens):
                if left == 0:
                    out.append(tuple(acc))
                return
            cj = gens[j].codim
            kmax = left // cj
            if j in capped:
                kmax = min(kmax, 1)
            for k in range(kmax + 1):
                acc.append(k)
                rec(j + 1, left - k * cj, acc)
                acc.pop()

        rec(0, c, [])
        # z-heavy monomials first so that they become pivots and get eliminated
        out.sort(key=lambda t: (self.zdeg(t), t[::-1]), reverse=True)
        return out

    def _new_component(self, c: int, echelon: Echelon | None = None) -> Component:
        monos = self.enumerate_monomials(c)
        return Component(c, monos, {t: i for i, t in enumerate(monos)},
                         echelon if echelon is not None else Echelon())

    def build(self) -> None:
        by_codim: dict[int, list] = {}
        for r in self.relations:
            by_codim.setdefault(self.homogeneous_codim(r), []).append(r)
        for c in range(self.topdeg + 1):
            comp = self._new_component(c)
            self.components[c] = comp
            ech = comp.echelon
            for r in by_codim.get(c, ()):
                ech.add(self._vec_raw(r))
            for j, g in enumerate(self.generators):
                lower = self.components.get(c - g.codim)
                if lower is None:
                    continue
                for row in list(lower.echelon.rows.values()):
                    ech.add(self._mulgen_vec(j, lower, row))

    def _vec_raw(self, e: Element) -> int:
        v = 0
        for t in e.terms:
            v ^= self._mono_vec(t)
        return v

    def _mono_vec(self, mono: Monomial) -> int:
        v = self._vec_cache.get(mono)
        if v is None:
            v = 0
            for t in self.rewrite(mono):
                v ^= 1 << self.components[self.codim(t)].index[t]
            self._vec_cache[mono] = v
        return v

    def _mulgen_vec(self, j: int, comp: Component, row: int) -> int:
        v = 0
        for i in iter_bits(row):
            mono = list(comp.monomials[i])
            mono[j] += 1
            v ^= self._mono_vec(tuple(mono))
        return v

    # -- queries ----------------------------------------------------------

    def rank(self, c: int) -> int:
        return self.components[c].rank if 0 <= c <= self.topdeg else 0

    def graded_component(self, c: int) -> tuple[list, int]:
        if not 0 <= c <= self.topdeg:
            raise ValueError(f"codim {c} outside 0..{self.topdeg}")
        comp = self.components[c]
        return comp.basis(), comp.rank

    def poincare(self) -> list[int]:
        return [self.rank(c) for c in range(self.topdeg + 1)]

    def nf_vec(self, mono: Monomial) -> int:
        """Reduced coordinate vector of a monomial within its component."""
        v = self._nf_cache.get(mono)
        if v is None:
            c = self.codim(mono)
            if c > self.topdeg:
                v = 0
            else:
                v = self.components[c].echelon.reduce(self._mono_vec(mono))
            self._nf_cache[mono] = v
        return v

    def to_vec(self, e: Element) -> dict[int, int]:
        """Normal-form vectors of each homogeneous part."""
        out: dict[int, int] = {}
        for t in e.terms:
            c = self.codim(t)
            if c > self.topdeg:
                continue
            out[c] = out.get(c, 0) ^ self.nf_vec(t)
        return {c: v for c, v in out.items() if v}

    def from_vec(self, c: int, v: int) -> Element:
        monos = self.components[c].monomials
        return Element(frozenset(monos[i] for i in iter_bits(v)))

    def from_vecs(self, vecs: Mapping[int, int]) -> Element:
        acc: frozenset = frozenset()
        for c, v in vecs.items():
            acc = acc | self.from_vec(c, v).terms
        return Element(acc)

    def normal_form(self, e: Element) -> Element:
        self.check(e)
        return self.from_vecs(self.to_vec(e))

    def vec_mul(self, c1: int, v1: int, c2: int, v2: int) -> int:
        c = c1 + c2
        if c > self.topdeg or not v1 or not v2:
            return 0
        m1 = self.components[c1].monomials
        m2 = self.components[c2].monomials
        out = 0
        for i in iter_bits(v1):
            for j in iter_bits(v2):
                key = (c1, i, c2, j)
                p = self._prod_cache.get(key)
                if p is None:
                    p = self.nf_vec(mono_mul(m1[i], m2[j]))
                    self._prod_cache[key] = p
                out ^= p
        return out

    def vecs_mul(self, a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for c1, v1 in a.items():
            for c2, v2 in b.items():
                if c1 + c2 > self.topdeg:
                    continue
                p = self.vec_mul(c1, v1, c2, v2)
                if p:
                    out[c1 + c2] = out.get(c1 + c2, 0) ^ p
        return {c: v for c, v in out.items() if v}

    def mul(self, a: Element, b: Element) -> Element:
        self.check(a)
        self.check(b)
        return self.from_vecs(self.vecs_mul(self.to_vec(a), self.to_vec(b)))

    def is_zero(self, e: Element) -> bool:
        return not self.to_vec(e)

    def level_echelon(self, c: int, level: int) -> Echelon:
        key = (c, level)
        ech = self._level_cache.get(key)
        if ech is None:
            ech = Echelon()
            comp = self.components[c]
            for t in comp.monomials:
                if self.zdeg(t) <= level:
                    ech.add(self.nf_vec(t))
            self._level_cache[key] = ech
        return ech

    def member_level_span(self, e: Element, level: int) -> bool:
        c = self.homogeneous_codim(e)
        if c is None or c > self.topdeg:
            return True
        v = self.to_vec(e).get(c, 0)
        return not self.level_echelon(c, level).reduce(v)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "generators": [{"name": g.name, "codim": g.codim, "zweight": g.zweight}
                           for g in self.generators],
            "square_rules": {self.generators[j].name:
                             [self.serialize_monomial(t) for t in sorted(r.terms)]
                             for j, r in sorted(self.square_rules.items())},
            "topdeg": self.topdeg,
            "relations": [[self.serialize_monomial(t) for t in sorted(r.terms)]
                          for r in self.relations],
            "components": {str(c): {
                "basis": [self.serialize_monomial(t) for t in comp.basis()],
                "reduction_rows": comp.echelon.hex_rows(),
            } for c, comp in self.components.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PresentedRing":
        gens = [Generator(g["name"], g["codim"], g["zweight"]) for g in data["generators"]]
        probe = FreeAlgebra(gens, data["topdeg"])
        rules = {probe.index[name]: Element(probe.parse_monomial(t) for t in terms)
                 for name, terms in data["square_rules"].items()}
        rels = [Element(probe.parse_monomial(t) for t in r) for r in data["relations"]]
        ring = cls(gens, rels, data["topdeg"], rules, build=False)
        for key, comp in data["components"].items():
            c = int(key)
            ring.components[c] = ring._new_component(
                c, Echelon.from_hex_rows(comp["reduction_rows"]))
            basis = [ring.parse_monomial(t) for t in comp["basis"]]
            if basis != ring.components[c].basis():
                raise ValueError(f"cached basis mismatch in codim {c}")
        if sorted(ring.components) != list(range(ring.topdeg + 1)):
            raise ValueError("cached ring is missing components")
        return ring
