from math import comb

import pytest
from hypothesis import given, strategies as st

from oglab.weylcomb import (
    PoincarePoly, coset_poincare_bruteforce, flag_poincare, gaussian_binomial,
    length_d, og_cell_count, og_parabolic, og_poincare, poincare_d, type_d_elements,
    weyl_d_order,
)

polys = st.lists(st.integers(-5, 5), max_size=6).map(PoincarePoly)


@pytest.mark.parametrize("n", range(2, 6))
def test_group_order(n):
    elems = list(type_d_elements(n))
    assert len(elems) == weyl_d_order(n) == poincare_d(n)(1)
    assert coset_poincare_bruteforce(n, set()) == poincare_d(n)


def test_d4_order():
    assert weyl_d_order(4) == 192


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 6) for k in range(1, n + 1)])
def test_closed_form_matches_enumeration(n, k):
    brute = coset_poincare_bruteforce(n, og_parabolic(k, n))
    if k == n:
        brute = brute * 2
    assert brute == og_poincare(k, 2 * n)
    assert og_poincare(k, 2 * n)(1) == og_cell_count(k, 2 * n) == comb(n, k) * 2 ** k


def test_frozen_small_cases():
    assert og_poincare(2, 6).coeffs == (1, 2, 3, 3, 2, 1)
    assert og_poincare(1, 4).coeffs == (1, 2, 1)
    assert og_poincare(1, 6).coeffs == (1, 1, 2, 1, 1)
    assert og_poincare(2, 12)(1) == 60
    assert og_poincare(4, 12)(1) == 240


@pytest.mark.parametrize("k,N", [(k, N) for N in range(4, 17, 2) for k in range(1, N // 2 + 1)])
def test_palindromic_with_expected_top_degree(k, N):
    P = og_poincare(k, N)
    n = N // 2
    assert P.is_palindromic()
    assert P.degree == k * (k - 1) // 2 + 2 * k * (n - k)


def test_longest_element_length():
    n = 4
    assert max(length_d(w) for w in type_d_elements(n)) == n * (n - 1)


def test_gaussian_binomial_at_one():
    for n in range(8):
        for k in range(n + 1):
            assert gaussian_binomial(n, k)(1) == comb(n, k)
    assert flag_poincare(1, 1, 3)(1) == 6
    assert flag_poincare(3, 1, 3) == PoincarePoly()


def test_exact_div_rejects_remainder():
    with pytest.raises(ArithmeticError):
        PoincarePoly([1, 0, 1]).exact_div(PoincarePoly([1, 1]))
    with pytest.raises(ZeroDivisionError):
        PoincarePoly([1]).divmod(PoincarePoly())


def test_bruteforce_guards():
    with pytest.raises(ValueError):
        coset_poincare_bruteforce(8, set())
    with pytest.raises(ValueError):
        coset_poincare_bruteforce(3, {5})
    with pytest.raises(ValueError):
        og_parabolic(4, 3)


@given(polys, polys, polys)
def test_poly_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(polys, st.lists(st.integers(-5, 5), min_size=1, max_size=4).map(
    lambda c: PoincarePoly(c + [1])))
def test_divmod_reconstructs(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_str():
    assert str(PoincarePoly([1, 2, 0, 1])) == "1 + 2t + t^3"
