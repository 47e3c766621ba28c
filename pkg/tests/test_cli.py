import json
import os

import pytest
from hypothesis import given, strategies as st

from trinolab import report
from trinolab.cli import ConfigError, build_config, build_parser, main, parse_grid
from trinolab.report import ReportRecord


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def lines(text):
    return [tuple(l.split("\t")) for l in text.strip().splitlines()]


def test_seq_examples(capsys):
    code, out = run(capsys, "seq", "T", "--b", "1", "--c", "1", "--to", "4")
    assert code == 0 and [v for _, v in lines(out.out)] == ["1", "1", "3", "7", "19"]
    code, out = run(capsys, "seq", "D", "--x", "1", "--to", "3")
    assert [v for _, v in lines(out.out)] == ["1", "3", "13", "63"]
    code, out = run(capsys, "seq", "catalan", "--to", "0")
    assert lines(out.out) == [("0", "1")]


def test_seq_other_families(capsys):
    _, out = run(capsys, "seq", "lucas", "--A", "1", "--B", "-1", "--from", "5", "--to", "6")
    assert lines(out.out) == [("5", "5"), ("6", "8")]
    _, out = run(capsys, "seq", "euler", "--from", "6", "--to", "6")
    assert lines(out.out) == [("6", "-61")]
    _, out = run(capsys, "seq", "central-binom", "--from", "4", "--to", "4")
    assert lines(out.out) == [("4", "70")]
    _, out = run(capsys, "seq", "M", "--b", "2", "--c", "1", "--from", "2", "--to", "2")
    assert lines(out.out) == [("2", "5")]
    _, out = run(capsys, "seq", "D", "--x", "1/2", "--from", "2", "--to", "2")
    assert lines(out.out) == [("2", "11/2")]


def test_seq_unknown_family_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["seq", "fibonacci"])
    assert exc.value.code == 2


def test_verify_family_prefix_passes(capsys):
    code, out = run(capsys, "verify", "--ids", "eq1.*", "--pmax", "100")
    assert code == 0
    assert out.out.strip().splitlines()[-1].startswith("checked ")
    assert "failed 0" in out.out


def test_verify_identity(capsys):
    code, out = run(capsys, "verify", "--ids", "id_tauraso", "--nmax", "50")
    assert code == 0 and "checked 51, passed 51, skipped 0, failed 0" in out.out


def test_verify_nothing_matched(capsys):
    code, out = run(capsys, "verify", "--ids", "nonexistent")
    assert code == 2 and "no identity" in out.err


def test_conjecture_divisibility(capsys):
    code, out = run(capsys, "conjecture", "--ids", "c1.1-div", "--nmax", "200")
    assert code == 0 and "checked 200, passed 200" in out.out


def test_conjecture_unresolved_branch(capsys):
    code, out = run(capsys, "conjecture", "--ids", "c5.5", "--pmax", "100")
    assert code == 0
    summary = out.out.strip().splitlines()[-1]
    assert "unresolved 0" not in summary and "unresolved" in summary


def test_conjecture_counterexample_exits_one_with_witness(capsys):
    code, out = run(capsys, "conjecture", "--ids", "c5.6", "--pmax", "300")
    assert code == 1
    assert "FAIL c5.6-f p=5 [] lhs=20 rhs=120 (mod 125) fail" in out.out
    assert not any(l.startswith("FAIL") and not l.startswith("FAIL c5.6-f") for l in out.out.splitlines())


def test_report_written_as_jsonl(tmp_path, capsys):
    path = tmp_path / "r.jsonl"
    code, _ = run(capsys, "verify", "--ids", "eq1.9", "--pmax", "11", "--grid=-2:2,0:0", "--out", str(path))
    assert code == 0
    recs = [ReportRecord.from_json(l) for l in path.read_text().splitlines()]
    assert len(recs) == 4 * 5
    assert recs == sorted(recs, key=ReportRecord.sort_key)
    first = json.loads(path.read_text().splitlines()[0])
    assert list(first) == ["schema_version", "run_id", "spec_id", "kind", "instance", "modulus", "lhs", "rhs", "status"]
    assert first["schema_version"] == "1" and first["instance"] == {"p": "3", "x": "-2"}
    assert all(isinstance(v, str) for v in first["instance"].values())
    assert all(r.status != "pass" or r.lhs == r.rhs for r in recs)


def test_report_csv_summary(tmp_path, capsys):
    path = tmp_path / "s.csv"
    code, _ = run(capsys, "verify", "--ids", "lem2.4", "--pmax", "20", "--grid", "0:1,0:1", "--format", "csv", "--out", str(path))
    rows = path.read_text().splitlines()
    assert code == 0
    assert rows[0] == "kind,spec_id,checked,pass,fail,skipped,representation-missing,unresolved"
    assert rows[1] == "congruence,lem2.4a,28,28,0,0,0,0"


def test_identity_records_use_zero_modulus_and_fraction_text(tmp_path, capsys):
    path = tmp_path / "i.jsonl"
    main(["verify", "--ids", "id_su2_25", "--nmax", "2", "--out", str(path)])
    recs = [ReportRecord.from_json(l) for l in path.read_text().splitlines()]
    assert [r.modulus for r in recs] == ["0", "0", "0"]
    assert recs[1].lhs == "-8/9" == recs[1].rhs


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\nids = eq1.9, lem2.3\npmax = 40\nnmax=7\ngrid = -1:1,2:3\nworkers = 2\n")
    args = build_parser().parse_args(["verify", "--config", str(cfg), "--pmax", "30"])
    config = build_config(args)
    assert config.ids == ("eq1.9", "lem2.3")
    assert (config.pmax, config.nmax, config.workers) == (30, 7, 2)
    g = config.as_grid()
    assert g.b == g.m == g.x == g.A == (-1, 1) and g.c == g.B == (2, 3)


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--pmin", "2"],
        ["verify", "--nmax", "0"],
        ["verify", "--workers", "0"],
        ["verify", "--grid", "1:2"],
        ["verify", "--grid", "3:1,0:0"],
        ["verify", "--pmin", "50", "--pmax", "10"],
        ["verify", "--config", "/nonexistent/run.cfg"],
    ],
)
def test_configuration_errors_exit_two(argv, capsys):
    assert main(argv) == 2


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("primes = 5\n")
    assert main(["verify", "--config", str(cfg)]) == 2


def test_parse_grid():
    assert parse_grid("-3:3,0:5") == ((-3, 3), (0, 5))
    with pytest.raises(ConfigError):
        parse_grid("a:b,c:d")


def test_run_id_ignores_worker_count(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    main(["verify", "--ids", "eq1.3", "--pmax", "13", "--workers", "1", "--out", str(a)])
    main(["verify", "--ids", "eq1.3", "--pmax", "13", "--workers", "3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_atomic_write_leaves_no_partial_file(tmp_path, monkeypatch):
    target = tmp_path / "out.jsonl"
    target.write_text("previous\n")

    def boom(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(os, "replace", boom)
    with pytest.raises(OSError):
        report.write_atomic(str(target), "new contents\n")
    assert target.read_text() == "previous\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.jsonl"]


digits = st.integers(-10**40, 10**40).map(str)


@given(
    st.text(min_size=1, max_size=12),
    st.sampled_from(["identity", "congruence", "conjecture"]),
    st.dictionaries(st.text(min_size=1, max_size=3), digits, max_size=4),
    digits,
    digits,
    digits,
    st.sampled_from(["pass", "fail", "skipped", "representation-missing", "unresolved"]),
)
def test_jsonl_roundtrip(spec_id, kind, instance, modulus, lhs, rhs, status):
    r = ReportRecord("1", "abc", spec_id, kind, instance, modulus, lhs, rhs, status)
    assert ReportRecord.from_json(r.to_json()) == r
