import sys
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from oglab import ogcalc
from oglab.gf2core import Element, FreeAlgebra
from oglab.motiva import SplitVariety
from oglab.ogcalc import (
    FlagCalculus, IncompleteRingError, build_og_ring, og_dim, og_ring, steenrod_action,
    verify_example, verify_gras,
)
from oglab.report import FAIL, PASS, REFUSED

sys.path.insert(0, str(Path(__file__).parent))
import criteria  # noqa: E402

COMPLETE = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2)]


def test_dimensions():
    assert og_dim(5, 1) == 17
    assert og_dim(5, 3) == 22
    assert og_dim(3, 0) == 6
    with pytest.raises(ValueError):
        build_og_ring(2, 2)


def test_generator_names():
    og = og_ring(5, 1)
    assert [g.name for g in og.ring.generators] == ["w1", "w2", "w3", "w4",
                                                    "z4", "z5", "z6", "z7", "z8", "z9"]
    assert [g.codim for g in og.ring.generators] == [1, 2, 3, 4, 4, 5, 6, 7, 8, 9]


@pytest.mark.parametrize("d,m", COMPLETE)
def test_segre_and_pullback_conventions(d, m):
    og = og_ring(d, m)
    fc = FlagCalculus(d, m, og.ring)
    for i in range(1, d - m + 1):
        assert og.ring.is_zero(fc.push_xi(fc.xi_power(m + i)) + og.gen(f"w{i}"))
    for i in range(m):
        assert not fc.push_xi(fc.xi_power(i))
    assert og.ring.is_zero(fc.push_xi(fc.xi_power(m)) + og.ring.one())
    assert fc.pull_total(fc.quadric.h) == fc.xi_power(1)


def test_z5_square_in_og_2_12():
    og = og_ring(5, 1)
    R = og.ring
    z5, z6, z7, z8, z9 = (og.gen(f"z{i}") for i in range(5, 10))
    w = {i: og.gen(f"w{i}") for i in range(1, 5)}
    # z5^2 = z5 c5 + z6 c4 + z7 c3 + z8 c2 + z9 c1 with c5 = 0
    rhs = R.mul(z6, w[4]) + R.mul(z7, w[3]) + R.mul(z8, w[2]) + R.mul(z9, w[1])
    assert R.is_zero(R.mul(z5, z5) + rhs)


@pytest.mark.parametrize("d,m", COMPLETE + [(1, 0), (3, 0), (5, 3)])
def test_rank_gate(d, m):
    og = og_ring(d, m)
    assert og.complete, og.deficit()
    assert og.ranks == ogcalc.expected_ranks(d, m)


def test_relations_without_square_rule_are_deficient():
    og = build_og_ring(2, 1, prereduce=False)
    assert not og.complete
    assert og.deficit() == {2: 1, 3: 1, 4: 2, 5: 2}
    alg = FreeAlgebra(og.ring.generators, og.topdeg)
    # z1^2 = z1 w1 + z2 is the one that is missing
    assert not og.ring.is_zero(ogcalc.zsquare_relation(2, 1, alg, 1))
    assert og.ring.is_zero(ogcalc.zsquare_relation(2, 1, alg, 2))
    with pytest.raises(IncompleteRingError):
        og.require_complete()


@pytest.mark.parametrize("d", range(1, 5))
def test_relations_without_square_rule_suffice_for_quadrics(d):
    assert build_og_ring(d, 0, prereduce=False).complete


def test_incomplete_ring_is_refused():
    og = build_og_ring(2, 1, prereduce=False)
    rep = verify_gras(2, 1, og=og)
    assert rep.status == REFUSED
    assert rep.witnesses == [{"rank_deficit": og.deficit()}]
    with pytest.raises(IncompleteRingError):
        ogcalc.compute_steenrod_action(og)


@pytest.mark.parametrize("d", range(1, 5))
def test_m0_collapse(d):
    assert criteria.m0_collapse_failures(d) == []


@pytest.mark.parametrize("d,m", COMPLETE)
def test_steenrod_axioms_on_generators(d, m):
    og = og_ring(d, m)
    act = steenrod_action(d, m)
    R = og.ring
    for g in R.generators:
        x = og.gen(g.name)
        assert R.is_zero(act.apply(x, 0) + x)
        assert R.is_zero(act.apply(x, g.codim) + R.mul(x, x))
        for i in range(g.codim + 1, og.topdeg + 1):
            assert not act.apply(x, i)


@pytest.mark.parametrize("d,m", COMPLETE)
def test_generator_levels(d, m):
    og = og_ring(d, m)
    act = steenrod_action(d, m)
    R = og.ring
    for g in R.generators:
        total = act.value(g.name)
        if g.name.startswith("w"):
            assert ogcalc.level(R, total) == 0
        else:
            assert ogcalc.level(R, og.gen(g.name)) == 1
            assert ogcalc.level(R, total) <= 1


@pytest.mark.parametrize("d,m", [(3, 1), (4, 2)])
def test_steenrod_cartan_property(d, m):
    og = og_ring(d, m)
    act = steenrod_action(d, m)
    R = og.ring
    monos = [t for c in range(og.topdeg + 1) for t in R.graded_component(c)[0]]

    @given(st.sampled_from(monos), st.sampled_from(monos))
    def check(a, b):
        x, y = Element({a}), Element({b})
        assert act.total(R.mul(x, y)) == R.vecs_mul(act.total(x), act.total(y))

    check()


@pytest.mark.parametrize("d,m", [(2, 1), (3, 1), (3, 2), (4, 1)])
def test_pairing_is_perfect(d, m):
    X = SplitVariety.from_og(og_ring(d, m))
    assert X.size == sum(og_ring(d, m).ranks)


def test_degree_map():
    og = og_ring(3, 1)
    top = og.ring.graded_component(og.topdeg)[0]
    assert len(top) == 1
    assert og.og_degree(Element(top)) == 1
    assert og.og_degree(Element()) == 0
    with pytest.raises(ValueError):
        og.og_degree(og.gen("w1"))


def test_example_value_is_frozen():
    rep = verify_example()
    assert rep.status == PASS
    assert rep.params["value"] == "w1^6*w2*z4*z5"
    assert (rep.params["codim"], rep.params["dim"]) == (9, 8)


@pytest.mark.parametrize("d,m", [(2, 1), (3, 2), (5, 3)])
def test_gras(d, m):
    rep = verify_gras(d, m)
    assert rep.status == PASS
    assert rep.params["dims"] == [(d - m) * (m + 1) + 1, og_dim(d, m)]


def test_gras_bound_is_sharp_in_og_2_12():
    # the example sits exactly at the threshold, so lowering it must fail
    rep = verify_gras(5, 1, min_dim=8)
    assert rep.status == FAIL
    assert any(w.get("element") == "z4*z5" and "steenrod" in w for w in rep.witnesses)


def test_parse_and_steenrod_errors():
    og = og_ring(2, 1)
    act = steenrod_action(2, 1)
    with pytest.raises(KeyError):
        og.parse("q7")
    with pytest.raises(ValueError):
        og.parse("z1**z2")
    with pytest.raises(ValueError):
        act.apply(og.gen("z1"), -1)
    with pytest.raises(ValueError):
        act.apply(og.gen("z1") + og.parse("w1*z1"), 1)


def test_json_round_trip():
    og = og_ring(3, 1)
    act = steenrod_action(3, 1)
    og2 = ogcalc.OGRing.from_json(og.to_json())
    act2 = ogcalc.SteenrodAction.from_json(og2, act.to_json())
    assert og2.ranks == og.ranks
    assert act2.table == act.table
