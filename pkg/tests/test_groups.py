import pytest
from hypothesis import given, strategies as st

from capfusion.groups import (
    ClosureExceedsCap, InvalidGenerator, NotNormal, Subgroup, bits, center, centralizer,
    conjugate_subgroup, element_order, is_normal, join, mask_of, normal_closure, normalizer,
    product_set, quotient, subgroup_generated,
)
from capfusion.builders import GroupSpec, build_group, cycles_to_perm

from conftest import grp, lat

SMALL = ["C1", "C6", "S3", "D8", "Q8", "A4", "S4", "SL(2,3)", "C5:C4", "Q12", "C2 x C2 x C2"]


def idx(g, perm):
    return g.elements.index(tuple(perm))


@pytest.mark.parametrize("name", SMALL + ["SL(2,5)", "A5", "GL(2,3)"])
def test_axioms_exhaustive(name):
    g = grp(name)
    assert g.check_axioms()
    assert len(set(map(tuple, g.elements))) == g.order


def test_orders_of_builtins():
    assert grp("SL(2,5)").order == 120
    assert grp("C1").order == 1
    assert grp("S4").order == 24


def test_element_orders():
    s4 = grp("S4")
    assert element_order(s4, 0) == 1
    assert element_order(s4, idx(s4, cycles_to_perm("(0 1)", 4))) == 2
    sl = grp("SL(2,5)")
    assert element_order(sl, sl.elements.index((1, 1, 0, 1))) == 5


def test_subgroup_generated_edges():
    g = grp("S4")
    assert subgroup_generated(g, []).mask == 1
    x = next(i for i in range(g.order) if g.orders[i] == 4)
    assert subgroup_generated(g, [x]).order == 4
    assert subgroup_generated(g, range(g.order)).is_whole()


def test_quotient_examples():
    g = grp("SL(2,5)")
    assert quotient(g, g.trivial).as_group.order == 120
    assert quotient(g, g.whole).as_group.order == 1
    z = center(g)
    assert z.order == 2
    q = quotient(g, z)
    assert q.as_group.order == 60
    assert q.is_homomorphism()


def test_quotient_rejects_non_normal():
    g = grp("S3")
    t = subgroup_generated(g, [idx(g, cycles_to_perm("(0 1)", 3))])
    with pytest.raises(NotNormal):
        quotient(g, t)


def test_conjugate_transposition():
    g = grp("S4")
    h = subgroup_generated(g, [idx(g, cycles_to_perm("(0 1)", 4))])
    x = idx(g, cycles_to_perm("(0 2)", 4))
    expect = subgroup_generated(g, [idx(g, cycles_to_perm("(1 2)", 4))])
    assert conjugate_subgroup(h, x) == expect
    assert conjugate_subgroup(h, 0) == h


def test_normalizer_centralizer_edges():
    g = grp("S4")
    for n in lat("S4").normal:
        assert normalizer(n).is_whole()
        assert is_normal(n)
    assert centralizer(g.whole).mask == center(g).mask


def test_invalid_generators():
    with pytest.raises(InvalidGenerator):
        build_group(GroupSpec("bad", "perm", 3, [(0, 0, 1)]))
    with pytest.raises(InvalidGenerator):
        build_group(GroupSpec("bad", "matrix", 5, [(1, 2, 2, 4)]))
    with pytest.raises(ClosureExceedsCap):
        build_group("S6", order_cap=100)


def test_bits_roundtrip():
    assert bits(0) == []
    assert bits(0b10110) == [1, 2, 4]
    assert mask_of([1, 2, 4]) == 0b10110


# -- properties over sampled elements ---------------------------------------

names = st.sampled_from(SMALL)


@given(names, st.data())
def test_lagrange(name, data):
    g = grp(name)
    gens = data.draw(st.lists(st.integers(0, g.order - 1), max_size=3))
    h = subgroup_generated(g, gens)
    assert g.order % h.order == 0
    assert 0 in h
    mul, inv = g.mul, g.inv
    assert all((h.mask >> mul[a][inv[b]]) & 1 for a in h.members for b in h.members)


@given(names, st.data())
def test_conjugation_composes(name, data):
    g = grp(name)
    h = data.draw(st.sampled_from(lat(name).all))
    x = data.draw(st.integers(0, g.order - 1))
    y = data.draw(st.integers(0, g.order - 1))
    assert conjugate_subgroup(h, g.mul[x][y]) == conjugate_subgroup(conjugate_subgroup(h, x), y)


@given(names, st.data())
def test_normalizer_and_centralizer(name, data):
    h = data.draw(st.sampled_from(lat(name).all))
    assert h <= normalizer(h)
    c = centralizer(h)
    zh = Subgroup(h.group, mask_of(x for x in h.members
                                   if all(h.group.mul[x][y] == h.group.mul[y][x] for y in h.members)))
    assert (c & h).mask == zh.mask


@given(names, st.data())
def test_quotient_lift_roundtrip(name, data):
    n = data.draw(st.sampled_from(lat(name).normal))
    q = quotient(n.group, n)
    assert q.is_homomorphism()
    c = data.draw(st.integers(0, q.as_group.order - 1))
    assert all(q.projection[x] == c for x in bits(q.lift(c)))
    assert q.as_group.order * n.order == n.group.order


@given(names, st.data())
def test_join_and_closure(name, data):
    a = data.draw(st.sampled_from(lat(name).all))
    b = data.draw(st.sampled_from(lat(name).all))
    j = join(a, b)
    assert a <= j and b <= j
    assert j.mask in lat(name).by_mask
    nc = normal_closure(a)
    assert is_normal(nc) and a <= nc
    # |AB| = |A||B|/|A & B|
    assert product_set(a, b).bit_count() * (a & b).order == a.order * b.order
