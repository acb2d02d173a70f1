from __future__ import annotations

import csv
import io
import json

import pytest

from cipscan.cli import run
from cipscan.report import SCHEMA_VERSION, report_distribution
from oracles import FIXTURES, LISTING1_CONSTRAINT

ROOTS = [str(FIXTURES / "listing1"), str(FIXTURES / "heart")]


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def constraints_file(tmp_path):
    path = tmp_path / "constraints.json"
    path.write_text(json.dumps([LISTING1_CONSTRAINT]))
    return path


@pytest.fixture
def links_file(tmp_path, constraints_file, capsys):
    path = tmp_path / "links.json"
    assert run(["trace", *ROOTS, "--constraints", str(constraints_file), "--out", str(path)]) == 0
    capsys.readouterr()
    return path


@pytest.fixture(autouse=True)
def _isolated_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("CIPSCAN_NO_COLOR", raising=False)


# distribution tables


def test_distribution_totals():
    items = [("null check", "a"), ("null check", "b"), ("setter", "a"), ("null check", "a")]
    t = report_distribution(items, "pattern")
    assert t.rows == ["null check", "setter"]
    assert t.columns == ["a", "b"]
    assert t.cell("null check", "a") == 2
    assert t.row_total("null check") == 3
    assert t.column_total("a") == 3
    assert t.total == 4


def test_single_cell_table():
    t = report_distribution([("categorical-value", "s")], "constraint-type")
    assert t.to_csv() == "constraint-type,s,total\ncategorical-value,1,1\ntotal,1,1\n"


def test_empty_table():
    t = report_distribution([], "pattern")
    assert t.total == 0 and t.rows == [] and t.columns == []
    assert t.to_json()["total"] == 0
    assert t.to_table(color=False).splitlines()[0] == "pattern  total"


def test_unknown_row_label_is_rejected():
    with pytest.raises(ValueError):
        report_distribution([("no such pattern", "s")], "pattern")


def test_csv_and_json_agree():
    items = [("null check", "a"), ("setter", "b"), ("mod op", "b"), ("setter", "b")]
    t = report_distribution(items, "pattern")
    payload = t.to_json()
    rows = list(csv.reader(io.StringIO(t.to_csv())))
    for row in rows[1:-1]:
        js = next(r for r in payload["rows"] if r["name"] == row[0])
        assert [int(x) for x in row[1:-1]] == [js["counts"][c] for c in payload["columns"]]
        assert int(row[-1]) == js["total"]
    assert int(rows[-1][-1]) == payload["total"] == 4


# commands


def test_catalog_command(capsys):
    code, out, _ = _run(capsys, "catalog", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 31  # header plus one row per pattern
    code, out, _ = _run(capsys, "catalog")
    payload = json.loads(out)
    assert payload["schema_version"] == SCHEMA_VERSION
    assert len(payload["patterns"]) == 30


def test_match_command(capsys):
    code, out, _ = _run(capsys, "match", str(FIXTURES / "catalog"), "--pattern", "null check", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and {r["pattern"] for r in rows} == {"null check"}


def test_detect_command(capsys, constraints_file):
    code, out, _ = _run(capsys, "detect", *ROOTS, "--constraints", str(constraints_file))
    assert code == 0
    (report,) = json.loads(out)["reports"]
    assert report["prng"] == "python-random-mt19937"
    assert [(c["instance"]["line"], c["instance"]["text"]) for c in report["candidates"]] == [
        (23, "patient.getAge() > age"),
        (53, "patient.getAge() > age"),
    ]


def test_trace_command(capsys, links_file):
    links = json.loads(links_file.read_text())["links"]
    assert [(l["enforcing"]["line"], l["provenance"]) for l in links] == [(23, "detector"), (53, "manual")]
    for link in links:
        assert [(d["kind"], d["symbol"]) for d in link["definitions"]] == [
            ("field-declaration", "Patient.age"),
            ("literal-occurrence", "45"),
        ]


def test_clones_command(capsys, links_file):
    code, out, _ = _run(capsys, "clones", "--links", str(links_file))
    assert code == 0
    payload = json.loads(out)
    (g,) = payload["groups"]
    assert g["consistency"] == "consistent"
    assert payload["summary"]["anchor"]["type-1"] == 1


def test_report_from_links(capsys, links_file):
    code, out, _ = _run(capsys, "report", "--links", str(links_file), "--format", "csv")
    assert code == 0
    assert out == "pattern,heart,total\nbinary comparison,2,2\ntotal,2,2\n"


def test_classify_defaults_to_csv(capsys, tmp_path):
    path = tmp_path / "c.csv"
    path.write_text('id,simplified,system\nk1,"mode in {a, b}",s\nk2,file readable == false,s\nk3,limit > 3,t\n')
    code, out, _ = _run(capsys, "classify", "--constraints", str(path))
    assert code == 0
    assert out == "id,type\nk1,categorical-value\nk2,dual-value-comparison\nk3,value-comparison\n"
    code, out, _ = _run(capsys, "report", "--constraints", str(path), "--by", "constraint-type", "--format", "json")
    table = json.loads(out)
    assert table["totals"] == {"s": 2, "t": 1}


def test_table_color_toggle(capsys, monkeypatch):
    _, out, _ = _run(capsys, "catalog", "--format", "table")
    assert out.startswith("\x1b[1m")
    monkeypatch.setenv("CIPSCAN_NO_COLOR", "1")
    _, out, _ = _run(capsys, "catalog", "--format", "table")
    assert "\x1b[" not in out


# exit codes


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        run(["detect", *ROOTS])  # --constraints missing
    assert exc.value.code == 1
    code, _, err = _run(capsys, "match", *ROOTS, "--depth", "-1")
    assert code == 1 and "depth" in err


def test_fatal_errors_exit_2(capsys, tmp_path, constraints_file):
    code, _, err = _run(capsys, "match", str(tmp_path / "missing"))
    assert code == 2 and "fatal" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = _run(capsys, "detect", *ROOTS, "--constraints", str(bad))
    assert code == 2
    code, _, _ = _run(capsys, "catalog", "--config", str(tmp_path / "absent.toml"))
    assert code == 2


def test_parse_failures_exit_3(capsys, tmp_path):
    root = tmp_path / "src"
    root.mkdir()
    (root / "Good.java").write_text("class Good { void f(String s) { if (s == null) { return; } } }\n")
    (root / "Bad.java").write_text("class Bad { void f( { \n")
    code, out, _ = _run(capsys, "match", str(root), "--format", "csv")
    assert code == 3
    assert "Good.java" in out


# configuration


def test_config_file_and_flag_precedence(capsys, tmp_path, monkeypatch):
    (tmp_path / "cipscan.toml").write_text('[cipscan]\nformat = "csv"\n')
    _, out, _ = _run(capsys, "catalog")
    assert out.startswith("name,")
    _, out, _ = _run(capsys, "catalog", "--format", "json")
    assert json.loads(out)["schema_version"] == SCHEMA_VERSION
    other = tmp_path / "other.toml"
    other.write_text('format = "table"\n')
    monkeypatch.setenv("CIPSCAN_NO_COLOR", "1")
    _, out, _ = _run(capsys, "catalog", "--config", str(other))
    assert out.splitlines()[1].startswith("----")


def test_config_cap_and_seed_are_used(capsys, tmp_path, constraints_file):
    (tmp_path / "cipscan.toml").write_text("cap = 1\nseed = 7\n")
    _, out, _ = _run(capsys, "detect", *ROOTS, "--constraints", str(constraints_file))
    (report,) = json.loads(out)["reports"]
    assert report["truncated"] is True and report["sample_seed"] == 7 and len(report["candidates"]) == 1
    _, out, _ = _run(capsys, "detect", *ROOTS, "--constraints", str(constraints_file), "--cap", "5")
    (report,) = json.loads(out)["reports"]
    assert report["truncated"] is False and len(report["candidates"]) == 2


def test_bad_config_value_is_usage_error(capsys, tmp_path):
    (tmp_path / "cipscan.toml").write_text('cap = 0\n')
    code, _, _ = _run(capsys, "catalog")
    assert code == 1


def test_output_is_byte_identical_across_runs(capsys, tmp_path, constraints_file):
    outs = []
    for name in ("a.json", "b.json"):
        target = tmp_path / name
        assert run(["trace", *ROOTS, "--constraints", str(constraints_file), "--out", str(target)]) == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
