"""Type D Weyl group combinatorics and cell-counting polynomials.

Signed permutations use the Björner-Brenti conventions: ``w`` is a tuple of
nonzero integers whose absolute values permute ``1..n``; simple reflections
are ``s_0`` (swap and negate the first two entries) and ``s_i`` (swap entries
i and i+1) for 1 <= i <= n-1.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from math import comb, factorial

MAX_BRUTEFORCE_N = 7


class PoincarePoly:
    """Polynomial in t with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> "PoincarePoly":
        return cls([0] * k + [coeff])

    @classmethod
    def qint(cls, a: int) -> "PoincarePoly":
        """[a]_t = 1 + t + ... + t^(a-1)."""
        return cls([1] * a)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PoincarePoly(x + y for x, y in zip(a, b))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k: int) -> "PoincarePoly":
        return PoincarePoly(k * x for x in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return PoincarePoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return PoincarePoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "PoincarePoly":
        if not self.coeffs:
            return self
        return PoincarePoly((0,) * k + self.coeffs)

    def divmod(self, other: "PoincarePoly") -> tuple["PoincarePoly", "PoincarePoly"]:
        """Exact long division; the divisor must have leading coefficient +-1."""
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must be monic up to sign")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return PoincarePoly(), PoincarePoly(rem)
        quo = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            q = rem[k + len(other.coeffs) - 1] * lead
            quo[k] = q
            if q:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= q * y
        return PoincarePoly(quo), PoincarePoly(rem)

    def exact_div(self, other: "PoincarePoly") -> "PoincarePoly":
        q, r = self.divmod(other)
        if r.coeffs:
            raise ArithmeticError(f"inexact polynomial division, remainder {r.coeffs}")
        return q

    def __call__(self, t):
        return sum(c * t ** k for k, c in enumerate(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, PoincarePoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PoincarePoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        words = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mon:
                words.append(str(c))
            else:
                words.append(mon if c == 1 else f"{c}{mon}")
        return " + ".join(words)


ZERO = PoincarePoly()
ONE = PoincarePoly([1])


# -- signed permutations ---------------------------------------------------

def type_d_elements(n: int):
    """All signed permutations of 1..n with an even number of sign changes."""
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            if signs.count(-1) % 2 == 0:
                yield tuple(s * p for s, p in zip(signs, perm))


def length_d(w) -> int:
    n = len(w)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
    nsp = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] + w[j] < 0)
    return inv + nsp


def right_descents(w) -> set[int]:
    out = set()
    if len(w) >= 2 and w[0] + w[1] < 0:
        out.add(0)
    for i in range(1, len(w)):
        if w[i - 1] > w[i]:
            out.add(i)
    return out


def coset_poincare_bruteforce(n: int, parabolic) -> PoincarePoly:
    """Length generating function of minimal coset representatives of W(D_n)/W_J.

    ``parabolic`` is the set J of simple reflection indices in 0..n-1.
    """
    if n > MAX_BRUTEFORCE_N:
        raise ValueError(f"n={n} too large for enumeration; use og_poincare")
    if n < 2:
        raise ValueError("type D enumeration needs n >= 2")
    J = set(parabolic)
    if not J <= set(range(n)):
        raise ValueError("parabolic nodes must lie in 0..n-1")
    counts: dict[int, int] = {}
    for w in type_d_elements(n):
        if right_descents(w) & J:
            continue
        ell = length_d(w)
        counts[ell] = counts.get(ell, 0) + 1
    top = max(counts)
    return PoincarePoly([counts.get(k, 0) for k in range(top + 1)])


def og_parabolic(k: int, n: int) -> set[int]:
    """Nodes generating the Levi of type A_{k-1} x D_{n-k} stabilizing an isotropic k-space."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    nodes = set(range(n - k + 1, n))
    if k == n:
        nodes = set(range(1, n))
    elif n - k >= 2:
        nodes |= set(range(0, n - k))
    return nodes


# -- closed forms ----------------------------------------------------------

@lru_cache(maxsize=None)
def poincare_a(n: int) -> PoincarePoly:
    """Poincaré polynomial of W(A_{n-1}) = S_n, i.e. [n]_t!."""
    out = ONE
    for i in range(1, n + 1):
        out = out * PoincarePoly.qint(i)
    return out


@lru_cache(maxsize=None)
def poincare_d(n: int) -> PoincarePoly:
    """Poincaré polynomial of W(D_n); D_0 and D_1 are trivial groups."""
    if n <= 1:
        return ONE
    out = PoincarePoly.qint(n)
    for i in range(1, n):
        out = out * PoincarePoly.qint(2 * i)
    return out


@lru_cache(maxsize=None)
def og_poincare(k: int, N: int) -> PoincarePoly:
    """Cell-counting polynomial of the split isotropic Grassmannian OG(k, N)."""
    if N % 2:
        raise ValueError("only even-dimensional forms are supported")
    n = N // 2
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return ONE
    if k > n:
        return ZERO
    levi = poincare_a(k) * poincare_d(n - k)
    one_comp = poincare_d(n).exact_div(levi)
    if k == n:
        # two connected components, the Levi quotient counts one of them
        return one_comp * 2
    return one_comp


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int) -> PoincarePoly:
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return gaussian_binomial(n - 1, k - 1) + gaussian_binomial(n - 1, k).shift(k)


def gaussian_multinomial(n: int, parts) -> PoincarePoly:
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != n:
        return ZERO
    out = ONE
    left = n
    for p in parts:
        out = out * gaussian_binomial(left, p)
        left -= p
    return out


def flag_poincare(i: int, j: int, N: int) -> PoincarePoly:
    """Two-step flags (dim i inside dim i+j) in an N-dimensional space."""
    if not 0 <= i <= i + j <= N or j < 0:
        return ZERO
    return gaussian_multinomial(N, (i, j, N - i - j))


def og_cell_count(k: int, N: int) -> int:
    """binom(n,k) 2^k cells for k < n = N/2 (and the same formula at k = n)."""
    n = N // 2
    if k > n:
        return 0
    return comb(n, k) * 2 ** k


def weyl_d_order(n: int) -> int:
    if n <= 1:
        return 1
    return 2 ** (n - 1) * factorial(n)
