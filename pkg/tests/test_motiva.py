import numpy as np
import pytest
from hypothesis import given, strategies as st

from oglab import motiva
from oglab.motiva import (
    Correspondence, Params, SplitVariety, corr_compose, corr_mult, corr_transpose,
    corsim_check, decomposition, gf2_inverse, idem_power, identity, matrix_idem_power,
    random_correspondence, verify_counts, verify_maksim, verify_poincare_identity,
)
from oglab.quadric import Quadric
from oglab.report import PASS


def test_params_r2_v3():
    p = Params(2, 3)
    assert (p.dim_x, p.dim_y, p.n, p.d, p.m) == (22, 4, 9, 5, 3)
    assert p.n == p.n_closed_form
    assert p.gras_threshold == 8


def test_params_r1_v6_boundary():
    p = Params(1, 6)
    assert p.n == 8 == p.gras_threshold
    assert not verify_maksim(1, 6)
    with pytest.raises(ValueError):
        p.n_closed_form


@pytest.mark.parametrize("r,v", [(r, v) for r in range(2, 7) for v in range(3, 21)])
def test_closed_form_n(r, v):
    p = Params(r, v)
    assert p.n == p.n_closed_form
    assert verify_maksim(r, v)


@pytest.mark.parametrize("r,v", [(2, 3), (2, 4), (3, 3)])
def test_dim_x_is_og_dimension(r, v):
    from oglab.weylcomb import og_poincare

    p = Params(r, v)
    assert og_poincare(2 ** r, 2 ** r * v).degree == p.dim_x


def test_poincare_identity_r2_v3_breakdown():
    rep = verify_poincare_identity(2, 3)
    assert rep.status == PASS and rep.params["total"] == 240
    # grouped by the rank j of the isotropic piece: 16 + 128 + 96
    by_j = {}
    for t in decomposition(2, 3):
        by_j[t.j] = by_j.get(t.j, 0) + t.poincare(1)
    assert by_j == {0: 16, 1: 128, 2: 96, 3: 0, 4: 0}


def test_poincare_identity_guard():
    with pytest.raises(ValueError):
        verify_poincare_identity(3, 5)


def test_counts():
    rep = verify_counts(2, 3)
    assert rep.status == PASS
    assert rep.params["shifts"] == {"unit": 0, "top": 22, "upper": 9}
    with pytest.raises(ValueError):
        verify_counts(1, 6)


def test_corsim_exact_and_residue_two():
    rep = corsim_check(10, [2, 7], seed=3, trials=200)
    assert rep.status == PASS and rep.params["residues"] == [2]
    assert motiva.lift_pairing(np.eye(5, dtype=int), np.eye(5, dtype=int)) == 5
    with pytest.raises(ValueError):
        corsim_check(4, [4])


@given(st.integers(1, 12), st.data())
def test_corsim_random_subsets(N, data):
    k = data.draw(st.integers(0, N))
    bpi = data.draw(st.lists(st.integers(0, N - 1), min_size=k, max_size=k, unique=True))
    rep = corsim_check(N, bpi, seed=data.draw(st.integers(0, 2 ** 16)), trials=20)
    assert rep.status == PASS
    assert rep.params["residues"] == [len(bpi) % 4]


def test_rank_constant():
    assert motiva.RANK_CONSTANT_MOD4 == 2


@given(st.integers(1, 10), st.integers(0, 2 ** 32 - 1))
def test_matrix_idem_power(n, seed):
    M = np.random.default_rng(seed).integers(0, 2, size=(n, n), dtype=np.uint8)
    l, P = matrix_idem_power(M)
    assert l >= 1
    assert np.array_equal((P.astype(int) @ P) % 2, P)
    for k in range(1, l):
        Pk = motiva.gf2_power(M, k)
        assert not np.array_equal((Pk.astype(int) @ Pk) % 2, Pk)


def test_gf2_inverse():
    M = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=np.uint8)
    assert np.array_equal((gf2_inverse(M).astype(int) @ M) % 2, np.eye(3, dtype=int))
    with pytest.raises(np.linalg.LinAlgError):
        gf2_inverse(np.ones((2, 2), dtype=np.uint8))


def test_split_variety_validation():
    with pytest.raises(ValueError):
        SplitVariety([0, 1], np.array([[1, 0], [0, 1]]))
    with pytest.raises(ValueError):
        SplitVariety([0, 0], np.array([[0, 1], [1, 0]]))


def test_correspondence_calculus():
    X = SplitVariety.from_quadric(Quadric(2))
    P = SplitVariety.projective_space(4)
    idX = identity(X)
    assert idX.is_symmetric() and idX.is_idempotent() and corr_mult(idX) == 1
    assert corr_transpose(corr_transpose(idX)) == idX
    with pytest.raises(ValueError):
        Correspondence(np.ones((X.size, X.size)), X, X)
    with pytest.raises(ValueError):
        corr_compose(identity(P), idX)


@given(st.integers(0, 2 ** 32 - 1))
def test_transpose_reverses_composition(seed):
    rng = np.random.default_rng(seed)
    X = SplitVariety.from_quadric(Quadric(3))
    f, g = random_correspondence(X, rng), random_correspondence(X, rng)
    assert corr_transpose(corr_compose(g, f)) == corr_compose(corr_transpose(f), corr_transpose(g))


@given(st.integers(0, 2 ** 32 - 1))
def test_symmetrized_projector(seed):
    rng = np.random.default_rng(seed)
    X = SplitVariety.from_quadric(Quadric(4))
    f = random_correspondence(X, rng)
    l, proj = idem_power(corr_compose(corr_transpose(f), f))
    assert proj.is_idempotent() and proj.is_symmetric()


def test_symsym_check_small():
    rep = motiva.symsym_check(trials=50, seed=1)
    assert rep.status == PASS
