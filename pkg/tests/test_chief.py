from collections import Counter

import pytest

from capfusion.chief import (
    ChiefFactor, SeriesExplosion, all_chief_factors, all_chief_series, classify, is_p_nilpotent,
    is_p_supersolvable, is_pd_factor, is_supersolvable, is_u_central, u_hypercentre,
)
from capfusion.groups import prime_factors
from capfusion.verify import generate_corpus

from conftest import grp, lat

SMALL = ["C1", "C6", "S3", "D8", "Q8", "A4", "S4", "SL(2,3)", "GL(2,3)", "C5:C4", "S3 x S3",
         "A4 x C2", "C2 x C2 x C2", "D12", "Q12", "C7:C3"]


def factor_orders(name):
    return Counter(f.order for f in all_chief_factors(grp(name), lat(name)))


def test_sl25_factors():
    fs = all_chief_factors(grp("SL(2,5)"), lat("SL(2,5)"))
    assert [(f.lower.order, f.upper.order) for f in fs] == [(1, 2), (2, 120)]


def test_sl23_has_q8_over_c2():
    fs = all_chief_factors(grp("SL(2,3)"), lat("SL(2,3)"))
    assert (2, 8) in [(f.lower.order, f.upper.order) for f in fs]
    assert sorted(f.order for f in fs) == [2, 3, 4]


def test_simple_group_single_factor():
    fs = all_chief_factors(grp("A5"), lat("A5"))
    assert len(fs) == 1 and fs[0].lower.is_trivial() and fs[0].upper.is_whole()
    assert len(all_chief_series(grp("A5"), lat("A5"))) == 1


def test_s4_unique_series():
    series = all_chief_series(grp("S4"), lat("S4"))
    assert len(series) == 1
    assert [h.order for h in series[0].chain] == [1, 4, 12, 24]
    assert series[0].factor_orders == [4, 3, 2]


def test_klein_three_series():
    assert len(all_chief_series(grp("C2 x C2"), lat("C2 x C2"))) == 3


def test_series_cap():
    with pytest.raises(SeriesExplosion):
        all_chief_series(grp("C2 x C2 x C2"), lat("C2 x C2 x C2"), cap=5)


def test_pd_and_u_central():
    sl = grp("SL(2,5)")
    f60, f2 = all_chief_factors(sl, lat("SL(2,5)"))[::-1]
    assert is_pd_factor(f60, 2) and is_pd_factor(f2, 2)
    f3 = [f for f in all_chief_factors(grp("S3"), lat("S3")) if f.order == 3][0]
    assert not is_pd_factor(f3, 2)
    assert is_u_central(f2) and not is_u_central(f60)
    f4 = [f for f in all_chief_factors(grp("A4"), lat("A4")) if f.order == 4][0]
    assert not is_u_central(f4)


def test_u_hypercentre_examples():
    assert u_hypercentre(grp("S3"), lat("S3")).is_whole()
    assert u_hypercentre(grp("A4"), lat("A4")).is_trivial()
    assert u_hypercentre(grp("C6"), lat("C6")).is_whole()


def test_classify_examples():
    f = classify(grp("S4"), lat("S4"))
    assert f.p_supersolvable[3] and not f.p_supersolvable[2]
    assert not classify(grp("A5"), lat("A5")).p_supersolvable[5]
    assert not classify(grp("SL(2,3)"), lat("SL(2,3)")).p_nilpotent[2]
    assert is_p_nilpotent(grp("S3"), lat("S3"), 3) is False
    assert is_p_nilpotent(grp("S3"), lat("S3"), 2)


@pytest.mark.parametrize("name", SMALL)
def test_series_structure(name):
    g, L = grp(name), lat(name)
    factors = {(f.lower.mask, f.upper.mask) for f in all_chief_factors(g, L)}
    seen = set()
    for s in all_chief_series(g, L):
        prod = 1
        for f in s.factors:
            assert L.is_normal(f.lower) and L.is_normal(f.upper)
            # nothing normal strictly between
            assert not any(f.lower < n < f.upper for n in L.normal)
            seen.add((f.lower.mask, f.upper.mask))
            prod *= f.order
        assert prod == g.order
    assert seen == factors


@pytest.mark.parametrize("name", SMALL)
def test_class_flag_invariants(name):
    g, L = grp(name), lat(name)
    f = classify(g, L)
    primes = prime_factors(g.order)
    if f.nilpotent:
        assert f.supersolvable
    if f.supersolvable:
        assert f.solvable and all(f.p_supersolvable.values())
    assert f.supersolvable == all(f.p_supersolvable[p] for p in primes)
    assert f.supersolvable == f.u_hypercentre.is_whole()
    assert all(is_p_supersolvable(g, L, p) == f.p_supersolvable[p] for p in primes)
    assert is_supersolvable(g, L) == f.supersolvable
    z = f.u_hypercentre
    assert L.is_normal(z)
    assert u_hypercentre(g, L, floor=z) == z
    for s in all_chief_series(g, L):
        for fac in s.factors:
            if fac.upper <= z:
                assert is_u_central(fac)


def test_jordan_holder_corpus_100():
    for name in generate_corpus(100).entries:
        g, L = grp(name), lat(name)
        orders = {tuple(sorted(s.factor_orders)) for s in all_chief_series(g, L)}
        assert len(orders) == 1, name


def test_chief_factor_repr():
    g = grp("S3")
    assert repr(ChiefFactor(g.trivial, g.whole)) == "ChiefFactor(1 < 6)"
