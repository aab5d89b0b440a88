"""Motivic bookkeeping for OG(2^r, 2^r v) over a field where it has a point.

Covers the dimension/shift arithmetic, the cell-count identity of the
decomposition into flag varieties times smaller isotropic Grassmannians,
the Tate-shift separation, the mod-4 degree congruence for lifts of a
diagonal projector, and a small correspondence calculus over GF(2).
"""

from __future__ import annotations

import time
from math import lcm
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .report import Report
from .weylcomb import PoincarePoly, flag_poincare, og_poincare

RANK_CONSTANT_MOD4 = 2  # rank of the upper motive, taken as input


@dataclass(frozen=True)
class Params:
    r: int
    v: int

    def __post_init__(self):
        if self.r < 1 or self.v < 2:
            raise ValueError("need r >= 1 and v >= 2")
        if (self.dim_x - self.dim_y) % 2:
            raise ArithmeticError("dim X - dim Y must be even")

    @property
    def dim_x(self) -> int:
        r, v = self.r, self.v
        return 2 ** (r - 1) * (2 ** r - 1) + 2 ** (2 * r) * (v - 2)

    @property
    def dim_y(self) -> int:
        return 2 ** (2 * self.r - 2)

    @property
    def n(self) -> int:
        return (self.dim_x - self.dim_y) // 2

    @property
    def n_closed_form(self) -> int:
        """Closed form, valid verbatim only for r >= 2."""
        r, v = self.r, self.v
        if r < 2:
            raise ValueError("closed form needs r >= 2")
        return 2 ** (r - 2) * (2 ** (r - 1) - 1) + 2 ** (2 * r - 1) * (v - 2)

    @property
    def d(self) -> int:
        return 2 ** (self.r - 1) * self.v - 1

    @property
    def m(self) -> int:
        return 2 ** self.r - 1

    @property
    def deg_d(self) -> int:
        return 2 ** self.r

    @property
    def rdim_v_prime(self) -> int:
        return 2 ** self.r * (self.v - 2)

    @property
    def gras_threshold(self) -> int:
        return (self.d - self.m) * (self.m + 1)


def params(r: int, v: int) -> Params:
    return Params(r, v)


@dataclass(frozen=True)
class MotiveTerm:
    i: int
    j: int
    shift: int
    poincare: PoincarePoly

    @property
    def shifted(self) -> PoincarePoly:
        return self.poincare.shift(self.shift)


def term_shift(i: int, j: int, rdim_vp: int) -> int:
    return i * (i - 1) // 2 + j * (i + j) + i * (rdim_vp - j)


def decomposition(r: int, v: int) -> list[MotiveTerm]:
    if v < 3:
        raise ValueError("decomposition needs v >= 3")
    p = Params(r, v)
    N = p.deg_d
    out = []
    for i in range(N + 1):
        for j in range(N - i + 1):
            poly = flag_poincare(i, j, N) * og_poincare(j, p.rdim_v_prime)
            out.append(MotiveTerm(i, j, term_shift(i, j, p.rdim_v_prime), poly))
    return out


def verify_poincare_identity(r: int, v: int) -> Report:
    t0 = time.perf_counter()
    if 2 ** r * v > 32:
        raise ValueError("outside desk scale (2^r v <= 32)")
    p = Params(r, v)
    lhs = PoincarePoly()
    for term in decomposition(r, v):
        lhs = lhs + term.shifted
    rhs = og_poincare(2 ** r, 2 ** r * v)
    witnesses = []
    if lhs != rhs:
        n = max(len(lhs.coeffs), len(rhs.coeffs))
        a = lhs.coeffs + (0,) * (n - len(lhs.coeffs))
        b = rhs.coeffs + (0,) * (n - len(rhs.coeffs))
        witnesses.append({"diff": {k: x - y for k, (x, y) in enumerate(zip(a, b)) if x != y}})
    return Report.from_witnesses(
        "poincare", {"r": r, "v": v, "dim_x": p.dim_x, "total": rhs(1),
                     "sum_terms": lhs(1)}, witnesses, t0)


def verify_counts(r: int, v: int) -> Report:
    if r < 2 or v < 3:
        raise ValueError("counting check needs r >= 2 and v >= 3")
    t0 = time.perf_counter()
    p = Params(r, v)
    witnesses = []
    if not 0 < p.dim_y < p.n:
        witnesses.append({"dim_y": p.dim_y, "n": p.n})
    # only the shifts are needed; the polynomials get huge at the top of the sweep
    half, full, rv = 2 ** (r - 1), 2 ** r, p.rdim_v_prime
    special = {"unit": term_shift(0, 0, rv), "top": term_shift(full, 0, rv),
               "upper": term_shift(half, 0, rv)}
    if special != {"unit": 0, "top": p.dim_x, "upper": p.n}:
        witnesses.append({"shifts": special})
    if len(set(special.values())) != 3:
        witnesses.append({"collision": special})
    return Report.from_witnesses("counts", {"r": r, "v": v, "n": p.n, "dim_y": p.dim_y,
                                            "shifts": special}, witnesses, t0)


def verify_maksim(r: int, v: int) -> bool:
    if r < 1 or v < 3:
        raise ValueError("need r >= 1 and v >= 3")
    p = Params(r, v)
    return p.n > p.gras_threshold


def maksim_sweep(r_max: int, v_max: int) -> Report:
    """n > (d-m)(m+1) on 2 <= r <= r_max, 3 <= v <= v_max; equality at (1, 6)."""
    t0 = time.perf_counter()
    witnesses = []
    checked = 0
    for r in range(2, r_max + 1):
        for v in range(3, v_max + 1):
            checked += 1
            if not verify_maksim(r, v):
                witnesses.append({"r": r, "v": v})
            counts = verify_counts(r, v)
            if not counts.ok:
                witnesses.extend(counts.witnesses)
    boundary = Params(1, 6)
    if verify_maksim(1, 6) or boundary.n != 8 or boundary.gras_threshold != 8:
        witnesses.append({"r": 1, "v": 6, "n": boundary.n,
                          "threshold": boundary.gras_threshold})
    return Report.from_witnesses("maksim", {
        "r_max": r_max, "v_max": v_max, "checked": checked,
        "boundary": {"r": 1, "v": 6, "n": boundary.n, "threshold": boundary.gras_threshold,
                     "holds": False}}, witnesses, t0)


# -- mod-4 degree congruence ----------------------------------------------------

def lift_pairing(X: np.ndarray, Y: np.ndarray) -> int:
    """deg(X . Y^t) in the product basis {b_i x b_j^*}: entrywise inner product."""
    return int(np.sum(X.astype(np.int64) * Y.astype(np.int64)))


def corsim_check(N: int, bpi: Sequence[int], seed: int = 0, trials: int = 1000,
                 bound: int = 5) -> Report:
    t0 = time.perf_counter()
    B = sorted(set(bpi))
    if any(not 0 <= b < N for b in B):
        raise ValueError("B_pi must be a subset of 0..N-1")
    P = np.zeros((N, N), dtype=np.int64)
    P[B, B] = 1
    k = len(B)
    witnesses = []
    if lift_pairing(P, P) != k:
        witnesses.append({"canonical": lift_pairing(P, P), "expected": k})
    rng = np.random.default_rng(seed)
    residues = set()
    for trial in range(trials):
        alpha = rng.integers(-bound, bound + 1, size=(N, N))
        lifted = P + 2 * alpha
        deg = lift_pairing(lifted, lifted)
        residues.add(deg % 4)
        if deg % 4 != k % 4:
            witnesses.append({"seed": seed, "trial": trial, "degree": deg})
        if lift_pairing(alpha, P) != lift_pairing(P, alpha):
            witnesses.append({"seed": seed, "trial": trial, "asymmetric": True})
    return Report.from_witnesses("corsim", {"N": N, "bpi": k, "seed": seed,
                                            "trials": trials, "residues": sorted(residues)},
                                 witnesses, t0)


# -- correspondences ------------------------------------------------------------

def gf2_inverse(M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    A = np.concatenate([M % 2, np.eye(n, dtype=np.uint8)], axis=1).astype(np.uint8)
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if A[r, col]), None)
        if piv is None:
            raise np.linalg.LinAlgError("matrix is singular over GF(2)")
        A[[row, piv]] = A[[piv, row]]
        for r in range(n):
            if r != row and A[r, col]:
                A[r] ^= A[row]
        row += 1
    return A[:, n:]


class SplitVariety:
    """Graded basis of Ch of a split variety with its mod-2 intersection pairing.

    ``codims[i]`` is the codimension of basis element i; index of the unique
    codim-0 element is the fundamental class.
    """

    def __init__(self, codims: Sequence[int], gram: np.ndarray, name: str = "X"):
        self.codims = tuple(int(c) for c in codims)
        self.dim = max(self.codims)
        self.gram = np.asarray(gram, dtype=np.uint8) % 2
        self.name = name
        if self.codims.count(0) != 1:
            raise ValueError("need exactly one fundamental class")
        if not np.array_equal(self.gram, self.gram.T):
            raise ValueError("pairing must be symmetric")
        for i, ci in enumerate(self.codims):
            for j, cj in enumerate(self.codims):
                if self.gram[i, j] and ci + cj != self.dim:
                    raise ValueError("pairing must vanish off complementary degrees")
        self.gram_inv = gf2_inverse(self.gram)

    @property
    def size(self) -> int:
        return len(self.codims)

    @property
    def fundamental(self) -> int:
        return self.codims.index(0)

    @classmethod
    def projective_space(cls, k: int) -> "SplitVariety":
        gram = np.eye(k + 1, dtype=np.uint8)[::-1]
        return cls(range(k + 1), gram, f"P^{k}")

    @classmethod
    def from_og(cls, og) -> "SplitVariety":
        """Basis of standard monomials of an OG ring, paired through its degree map."""
        from .gf2core import Element

        ring = og.ring
        monos = []
        for c in range(og.topdeg + 1):
            monos.extend(ring.graded_component(c)[0])
        codims = [ring.codim(t) for t in monos]
        gram = np.array([[og.og_degree(ring.mul(Element({a}), Element({b})))
                          if ring.codim(a) + ring.codim(b) == og.topdeg else 0
                          for b in monos] for a in monos], dtype=np.uint8)
        return cls(codims, gram, f"OG({og.m + 1},{2 * og.d + 2})")

    @classmethod
    def from_quadric(cls, Q) -> "SplitVariety":
        return cls([Q.codim(b) for b in Q.basis], np.array(Q.gram()), f"Q^{Q.dim}")

    def __eq__(self, other) -> bool:
        return (isinstance(other, SplitVariety) and self.codims == other.codims
                and np.array_equal(self.gram, other.gram))

    def __hash__(self):
        return hash(self.codims)


@dataclass
class Correspondence:
    """Morphism M(source) -> M(target)(shift); matrix column j is the image of b_j."""

    matrix: np.ndarray
    source: SplitVariety
    target: SplitVariety
    shift: int = 0

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.uint8) % 2
        if self.matrix.shape != (self.target.size, self.source.size):
            raise ValueError("matrix shape does not match the bases")
        for i, j in zip(*np.nonzero(self.matrix)):
            # Ch^c(source) lands in Ch^{c + shift + dim_t - dim_s}(target)
            want = self.source.codims[j] + self.shift + self.target.dim - self.source.dim
            if self.target.codims[i] != want:
                raise ValueError("correspondence does not respect the grading")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Correspondence) and self.source == other.source
                and self.target == other.target and self.shift == other.shift
                and np.array_equal(self.matrix, other.matrix))

    def is_symmetric(self) -> bool:
        return self.source == self.target and self == corr_transpose(self)

    def is_idempotent(self) -> bool:
        return self == corr_compose(self, self)


def corr_compose(g: Correspondence, f: Correspondence) -> Correspondence:
    """g o f."""
    if f.target != g.source:
        raise ValueError("grading mismatch in composition")
    mat = (g.matrix.astype(np.int64) @ f.matrix.astype(np.int64)) % 2
    return Correspondence(mat, f.source, g.target, f.shift + g.shift)


def corr_transpose(f: Correspondence) -> Correspondence:
    mat = (f.source.gram_inv.astype(np.int64) @ f.matrix.T.astype(np.int64)
           @ f.target.gram.astype(np.int64)) % 2
    shift = f.target.dim - f.source.dim + f.shift
    return Correspondence(mat, f.target, f.source, shift)


def corr_mult(f: Correspondence) -> int:
    """Coefficient of [target] in the image of [source]."""
    return int(f.matrix[f.target.fundamental, f.source.fundamental])


def identity(X: SplitVariety) -> Correspondence:
    return Correspondence(np.eye(X.size, dtype=np.uint8), X, X)


def _cycle(M: np.ndarray) -> tuple[int, int]:
    """(index, period) of the power sequence M, M^2, ... over GF(2)."""
    M64 = M.astype(np.int64)
    seen: dict[bytes, int] = {}
    cur = M
    k = 1
    while True:
        key = np.packbits(cur, axis=None).tobytes()
        if key in seen:
            return seen[key], k - seen[key]
        seen[key] = k
        cur = ((cur.astype(np.int64) @ M64) % 2).astype(np.uint8)
        k += 1


def gf2_power(M: np.ndarray, e: int) -> np.ndarray:
    out = np.eye(M.shape[0], dtype=np.int64)
    base = M.astype(np.int64)
    while e:
        if e & 1:
            out = (out @ base) % 2
        base = (base @ base) % 2
        e >>= 1
    return out.astype(np.uint8)


def matrix_idem_power(M: np.ndarray) -> tuple[int, np.ndarray]:
    """Smallest l >= 1 with M^l idempotent over GF(2).

    The support graph splits M into invariant diagonal blocks; each block's
    power sequence is cycle-detected and the (index, period) pairs combined.
    """
    M = np.asarray(M, dtype=np.uint8) % 2
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("need a square matrix")
    ncomp, labels = connected_components(csr_matrix(M | M.T), directed=False)
    start, period = 1, 1
    for c in range(ncomp):
        idx = np.flatnonzero(labels == c)
        s, p = _cycle(M[np.ix_(idx, idx)])
        start = max(start, s)
        period = lcm(period, p)
    # M^l is idempotent iff l >= index and period divides l
    l = -(-start // period) * period
    return l, gf2_power(M, l)


def idem_power(f: Correspondence) -> tuple[int, Correspondence]:
    if f.source != f.target or f.shift:
        raise ValueError("idem_power needs a square degree-0 correspondence")
    l, mat = matrix_idem_power(f.matrix)
    return l, Correspondence(mat, f.source, f.target)


def random_correspondence(X: SplitVariety, rng: np.random.Generator) -> Correspondence:
    """Random degree-0 endomorphism of M(X), respecting the grading."""
    mask = np.array([[X.codims[i] == X.codims[j] for j in range(X.size)]
                     for i in range(X.size)], dtype=np.uint8)
    mat = rng.integers(0, 2, size=(X.size, X.size), dtype=np.uint8) & mask
    return Correspondence(mat, X, X)


def default_varieties() -> list[SplitVariety]:
    from .ogcalc import og_ring
    from .quadric import Quadric

    out = [SplitVariety.from_quadric(Quadric(d)) for d in range(1, 7)]
    out += [SplitVariety.from_og(og_ring(d, m)) for d, m in ((2, 1), (3, 1), (3, 2), (4, 1))]
    out.append(SplitVariety.projective_space(5))
    return out


def symsym_check(trials: int = 1000, seed: int = 0,
                 varieties: Sequence[SplitVariety] | None = None) -> Report:
    """idem_power(f^t o f) is a symmetric projector for random degree-0 f."""
    t0 = time.perf_counter()
    Xs = list(varieties) if varieties is not None else default_varieties()
    rng = np.random.default_rng(seed)
    witnesses = []
    max_l = 0
    for trial in range(trials):
        X = Xs[trial % len(Xs)]
        f = random_correspondence(X, rng)
        g = corr_compose(corr_transpose(f), f)
        l, proj = idem_power(g)
        max_l = max(max_l, l)
        if not (proj.is_idempotent() and proj.is_symmetric()):
            witnesses.append({"seed": seed, "trial": trial, "variety": X.name, "l": l})
    return Report.from_witnesses("symsym", {"trials": trials, "seed": seed,
                                            "varieties": [X.name for X in Xs],
                                            "max_l": max_l}, witnesses, t0)
