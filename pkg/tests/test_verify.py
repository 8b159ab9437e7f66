from capfusion.verify import (
    Corpus, evaluate_group, generate_corpus, get_theorem, registry, summarize, verdict_line, verify,
)

from conftest import grp

IDS = [t.id for t in registry()]


def rows_for(tid, names):
    return verify(get_theorem(tid), Corpus(list(names)))


def test_registry_complete():
    assert len(registry()) >= 15
    assert set(IDS) == {"T-1.5", "T-1.7", "T-1.8", "T-2.3", "T-2.4", "C-2.5", "T-3.1", "T-3.2",
                        "C-3.4", "C-3.5", "T-4.1", "C-4.2", "C-4.3", "C-4.5", "C-4.6", "C-4.7", "R-1.6"}
    assert all(t.statement for t in registry())


def test_t23_without_normal_p_subgroups():
    assert rows_for("T-2.3", ["A5"]) == []


def test_r16_on_c6():
    rows = rows_for("R-1.6", ["C6"])
    r2 = next(r for r in rows if r.params == {"p": 2})
    assert r2.hypothesis_holds and r2.conclusion_holds


def test_t41_on_a5_p5():
    r = next(r for r in rows_for("T-4.1", ["A5"]) if r.params["p"] == 5)
    assert r.conclusion_holds and not r.violation


def test_trivial_group_is_vacuous():
    rows = verify(registry(), Corpus(["C1"]))
    # only T-3.2 binds anything (H = 1), and that row is consistent
    assert [r.theorem_id for r in rows] == ["T-3.2"]
    assert rows[0].hypothesis_holds and rows[0].conclusion_holds


def test_t18_without_admissible_order():
    # |S| = 2 leaves no d with 1 < d < |S|
    assert [r.params for r in rows_for("T-1.8", ["C6"]) if r.params["p"] == 2] == []


def test_converse_failure_exhibit():
    r = next(r for r in rows_for("R-1.6", ["A5"]) if r.params["p"] == 5)
    assert not r.hypothesis_holds and r.conclusion_holds


def test_theorem_scopes_on_s4():
    rows = rows_for("T-3.1", ["S4"])
    by_p = {r.params["p"]: r for r in rows}
    assert not by_p[2].hypothesis_holds and not by_p[2].conclusion_holds
    assert by_p[3].conclusion_holds


def test_corpus_examples():
    assert generate_corpus(1).entries == ["C1"]
    c24 = generate_corpus(24).entries
    for name in ["SL(2,3)", "S4", "D8xC3"]:
        assert name in c24
    c120 = generate_corpus(120).entries
    assert "SL(2,5)" in c120 and "A5" in c120


def test_corpus_has_unique_fingerprints():
    c = generate_corpus(60)
    assert len(set(c.fingerprints.values())) == len(c.entries)
    assert all(grp(n).order <= 60 for n in c.entries)


def test_skips_are_reported():
    rows = evaluate_group("S4", ["T-3.1"], lattice_cap=10)
    assert len(rows) == 1 and rows[0].skipped
    line = verdict_line(rows[0])
    assert "hyp=skip" in line and "reason=" in line
    s = summarize(rows, ["T-3.1"])[0]
    assert s.skipped == 1 and s.rows == 0


def test_deterministic_across_workers():
    c = generate_corpus(20)
    a = [verdict_line(r, timing=False) for r in verify(registry(), c, 1)]
    b = [verdict_line(r, timing=False) for r in verify(registry(), c, 3)]
    assert a == b


def test_verdict_format():
    rows = rows_for("T-2.4", ["D8"])
    line = verdict_line(rows[0], timing=False)
    assert line.startswith("VERDICT theorem=T-2.4 group=D8 params=p=2,P=")
    assert line.endswith(" ms=0")


def test_sentinel_small():
    rows = verify(registry(), generate_corpus(30))
    assert not [r for r in rows if r.violation]
