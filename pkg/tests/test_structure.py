import pytest
from hypothesis import given, strategies as st

from capfusion.groups import conjugate_mask, is_normal, prime_factors, p_part, subgroup_generated
from capfusion.structure import (
    LatticeExceedsCap, core_subgroups, enumerate_subgroups, exponent_at_most, frattini,
    generalized_fitting, is_nilpotent_subgroup, is_perfect, is_quasisimple, is_subnormal,
    overgroups, sylow_subgroup, upper_central_series,
)

from conftest import grp, lat

COUNTS = {
    "C6": 4, "S4": 30, "Q8": 6, "A4": 10, "S5": 156, "SL(2,5)": 76, "A5": 59, "D8": 10,
    "C2 x C2 x C2 x C2": 67, "GL(2,3)": 55, "SL(2,3)": 15, "S3 x S3": 60, "C1": 1,
}
SMALL = ["C6", "S3", "D8", "Q8", "A4", "S4", "SL(2,3)", "C5:C4", "S3 x C3", "Q12", "D12"]


@pytest.mark.parametrize("name,count", COUNTS.items())
def test_subgroup_counts(name, count):
    assert len(lat(name)) == count


def test_c6_orders_and_q8_hamiltonian():
    assert [h.order for h in lat("C6")] == [1, 2, 3, 6]
    assert len(lat("Q8").normal) == 6


def brute_subgroups(g):
    """Every subgroup of a group of order <= 24 is generated by at most 3 elements."""
    found = set()
    n = g.order
    for a in range(n):
        for b in range(a, n):
            h = subgroup_generated(g, [a, b])
            found.add(h.mask)
            for c in range(b, n):
                found.add(subgroup_generated(g, [a, b, c]).mask)
    return found


@pytest.mark.parametrize("name", ["S4", "D8", "SL(2,3)", "A4"])
def test_enumeration_matches_brute_force(name):
    assert set(lat(name).by_mask) == brute_subgroups(grp(name))


def test_lattice_cap():
    with pytest.raises(LatticeExceedsCap):
        enumerate_subgroups(grp("S5"), cap=100)


def test_sylow_examples():
    sl = grp("SL(2,5)")
    s = sylow_subgroup(sl, 2)
    assert s.order == 8
    assert not exponent_at_most(s, 2) and sum(1 for x in s.members if sl.orders[x] == 4) == 6  # Q8
    assert sylow_subgroup(grp("C6"), 5).is_trivial()
    assert sylow_subgroup(grp("S4"), 3).order == 3
    # with and without a lattice agree on the order
    assert sylow_subgroup(sl, 2, lat("SL(2,5)")).order == 8


def test_core_subgroups_sl25():
    c = core_subgroups(grp("SL(2,5)"), lat("SL(2,5)"))
    assert c.o_p[2].order == 2
    assert c.frattini.order == 2
    assert c.fitting.order == 2
    assert c.gen_fitting.order == 120
    assert [k.order for k in c.components] == [120]


def test_core_subgroups_s4_and_abelian():
    c = core_subgroups(grp("S4"), lat("S4"))
    assert c.o_p[2].order == 4 and c.o_p[3].order == 1 and c.frattini.order == 1
    c = core_subgroups(grp("C2 x C6"), lat("C2 x C6"))
    assert c.fitting.is_whole() and c.gen_fitting.is_whole() and c.hypercentre_nilpotent.is_whole()


def test_overgroups_examples():
    g = grp("SL(2,5)")
    assert len(overgroups(lat("SL(2,5)"), g.trivial)) == 76
    assert overgroups(lat("SL(2,5)"), g.whole) == [lat("SL(2,5)").canonical(g.whole)]
    c4 = lat("SL(2,5)").order_index[4][0]
    assert any(h.order == 24 for h in overgroups(lat("SL(2,5)"), c4))


def test_exponent():
    assert exponent_at_most(grp("C2 x C2 x C2").whole, 2)
    assert not exponent_at_most(grp("Q8").whole, 2)
    assert exponent_at_most(grp("C2 x C2").whole, 2)


def test_quasisimple_and_perfect():
    assert is_quasisimple(grp("SL(2,5)").whole, lat("SL(2,5)"))
    assert is_quasisimple(grp("A5").whole, lat("A5"))
    assert not is_perfect(grp("S4").whole)


@pytest.mark.parametrize("name", SMALL + ["SL(2,5)"])
def test_lattice_invariants(name):
    g, L = grp(name), lat(name)
    assert L.all[0].is_trivial() and L.all[-1].is_whole()
    for h in L:
        assert g.order % h.order == 0
        assert L.is_normal(h) == all(conjugate_mask(g, h.mask, x) == h.mask for x in range(g.order))
        for x in g.gens:
            assert conjugate_mask(g, h.mask, x) in L.by_mask


@pytest.mark.parametrize("name", SMALL + ["SL(2,5)", "S5"])
def test_sylow_counts(name):
    g, L = grp(name), lat(name)
    for p in prime_factors(g.order):
        syl = L.order_index[p_part(g.order, p)]
        assert len(syl) % p == 1
        s = syl[0]
        assert {conjugate_mask(g, s.mask, x) for x in range(g.order)} == {k.mask for k in syl}


@pytest.mark.parametrize("name", SMALL + ["SL(2,5)"])
def test_characteristic_invariants(name):
    g, L = grp(name), lat(name)
    c = core_subgroups(g, L)
    for k in [c.frattini, c.fitting, c.gen_fitting, *c.o_p.values(), *c.o_p_prime.values()]:
        assert is_normal(k)
    assert c.fitting <= c.gen_fitting
    assert is_nilpotent_subgroup(c.fitting, L)
    ucs = c.upper_central
    assert all(a < b for a, b in zip(ucs, ucs[1:]))
    for comp in c.components:
        assert is_subnormal(comp) and is_perfect(comp)


@given(st.sampled_from(SMALL), st.data())
def test_frattini_elements_are_non_generators(name, data):
    g = grp(name)
    phi = frattini(lat(name))
    gens = list(g.gens) + data.draw(st.lists(st.integers(0, g.order - 1), max_size=2))
    x = data.draw(st.sampled_from(phi.members))
    rest = [y for y in gens if y != x]
    if subgroup_generated(g, gens).is_whole():
        assert subgroup_generated(g, rest).is_whole()


def test_generalized_fitting_solvable_is_fitting():
    L = lat("S4")
    assert generalized_fitting(L).order == 4
    assert upper_central_series(grp("D8"))[-1].is_whole()
