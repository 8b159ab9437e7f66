import json

import pytest

from capfusion.cli import Config, UsageError, load_config, build_parser, main, parse_variant


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.splitlines(), out.err


def test_info_sl25(capsys):
    code, lines, _ = run(capsys, "info", "SL(2,5)")
    assert code == 0
    assert lines[0] == "GROUP SL(2,5) order=120"
    assert "NORMAL 1 2 120" in lines
    assert [l for l in lines if l.startswith("CHIEF")] == [
        "CHIEF 1 < 2 order=2 pd=2", "CHIEF 2 < 120 order=60 pd=2,3,5"]


def test_info_c1(capsys):
    code, lines, _ = run(capsys, "info", "C1")
    assert code == 0 and "GROUP C1 order=1" in lines and "SUBGROUPS 1" in lines


def test_cap_witness(capsys):
    code, lines, _ = run(capsys, "cap", "--group", "SL(2,5)", "--subgroup", "order:4,index:0",
                         "--variant", "strong-pcap:2")
    assert code == 0
    assert lines[0] == "VERDICT false"
    assert lines[1].startswith("WITNESS overgroup=24#") and lines[1].endswith("factor=2-8")


def test_cap_by_generators(capsys):
    code, lines, _ = run(capsys, "cap", "--group", "S4", "--subgroup", "gens:(0 1)", "--variant", "partial")
    assert code == 0 and lines == ["VERDICT true", "SERIES 1 4 12 24"]
    code, lines, _ = run(capsys, "cap", "--group", "SL(2,3)", "--subgroup", "gens:0 1 2 0", "--variant", "cap")
    assert lines[0] == "VERDICT false" and lines[1].endswith("factor=2-8")


def test_fusion_a5(capsys):
    code, lines, _ = run(capsys, "fusion", "--group", "A5", "-p", "5", "--strongly-closed", "--chain")
    assert code == 0
    assert lines == ["SC order=1 index=0", "SC order=5 index=0", "SUPERSOLVABLE true", "CHAIN 1 5"]


def test_fusion_s4_json(capsys):
    code, lines, _ = run(capsys, "fusion", "--group", "S4", "-p", "2", "--essentials", "--format", "json-lines")
    recs = [json.loads(l) for l in lines]
    assert all(not isinstance(v, (list, dict)) for r in recs for v in r.values())
    assert [r["order"] for r in recs if r["kind"] == "essential"] == [4, 8]
    assert recs[-1] == {"kind": "supersolvable", "holds": False}


def test_verify_exit_and_summary(capsys):
    code, lines, _ = run(capsys, "verify", "R-1.6", "--corpus-max-order", "12", "--workers", "1")
    assert code == 0
    assert lines[-1].startswith("SUMMARY theorem=R-1.6 rows=")
    assert lines[-1].endswith("violations=0")


def test_corpus_list(capsys):
    code, lines, _ = run(capsys, "corpus", "list")
    assert code == 0 and any(l.startswith("C<p>:C<q>") for l in lines)


@pytest.mark.parametrize("argv", [
    ["bogus"], ["info"], ["cap", "--group", "S3", "--subgroup", "x", "--variant", "cap"],
    ["cap", "--group", "S3", "--subgroup", "order:2,index:9", "--variant", "cap"],
    ["cap", "--group", "S3", "--subgroup", "order:2,index:0", "--variant", "pcap:4"],
    ["info", "S7"], ["info", "S5", "--lattice-cap", "50"], ["fusion", "--group", "S3", "-p", "4"],
    ["verify", "T-9.9", "--corpus-max-order", "4"],
])
def test_usage_and_cap_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_cap_error_names_the_limit(capsys):
    code, _, err = run(capsys, "info", "S6", "--order-cap", "100")
    assert code == 2 and "100" in err


def test_config_precedence():
    args = build_parser().parse_args(["info", "C2", "--lattice-cap", "7"])
    env = {"CAPF_LATTICE_CAP": "9", "CAPF_ORDER_CAP": "55", "CAPF_OUTPUT_FORMAT": "json-lines"}
    cfg = load_config(args, env)
    assert cfg.lattice_cap == 7 and cfg.order_cap == 55 and cfg.output_format == "json-lines"
    assert load_config(build_parser().parse_args(["info", "C2"]), {}) == Config()
    with pytest.raises(UsageError):
        load_config(args, {"CAPF_SERIES_CAP": "-1"})
    with pytest.raises(UsageError):
        load_config(args, {"CAPF_OUTPUT_FORMAT": "xml"})


def test_parse_variant():
    assert parse_variant("strong-pcap:3") == ("strong_p_cap", 3)
    assert parse_variant("cap") == ("cap", None)
    with pytest.raises(UsageError):
        parse_variant("cap:2")
