import csv
import io
import json

import pytest

from isoschubert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_shapes(capsys):
    code, out, _ = run(capsys, "shapes", "--n", "3")
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 12
    code, out, _ = run(capsys, "shapes", "--n", "3", "--weight", "3", "--format", "json")
    doc = json.loads(out)
    assert doc["schemaVersion"] == 1
    assert [r["shape"] for r in doc["rows"]] == ["2//2", "3//1"]


def test_weyl_table_csv(capsys):
    code, out, _ = run(capsys, "weyl-table", "--n", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert [r["action"] for r in rows] == [
        "(e1,e2,e3,e4)",
        "(e1,-e2,e3,e4)",
        "(-e2,-e1,e3,e4)",
        "(e1,e3,e2,e4)",
        "(e3,-e2,e1,e4)",
        "(e3,e4,e1,e2)",
    ]
    assert rows[5]["R_D"] == "Pi\\{a2,a4}"
    assert [int(r["length"]) for r in rows] == [0, 5, 11, 1, 6, 4]
    assert rows[3]["note"] and not rows[0]["note"]


def test_report_json(capsys):
    code, out, _ = run(capsys, "report", "--n", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] is True and doc["schemaVersion"] == 1 and doc["n"] == 3
    assert all(i["status"] == "pass" for i in doc["items"])
    assert {"name", "display", "status", "details"} == set(doc["items"][0])


@pytest.mark.parametrize("name,display", [("mult", "(mult)"), ("teles", "(teles)"), ("lemma", "(tau), (gamp)")])
def test_check_display(capsys, name, display):
    code, out, _ = run(capsys, "--format", "json", "check", name, "--n", "3")
    assert code == 0
    doc = json.loads(out)
    assert display in [i["display"] for i in doc["items"]]


@pytest.mark.parametrize("name", ["motive", "pairing", "generation", "assoc"])
def test_checks_pass(capsys, name):
    assert run(capsys, "check", name, "--n", "3")[0] == 0


def test_bad_n(capsys):
    code, _, err = run(capsys, "shapes", "--n", "2")
    assert code == 2 and "n" in err
    assert run(capsys, "report", "--n", "7")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "check", "nothing", "--n", "3")[0] == 2


def test_deterministic(capsys, tmp_path):
    a = run(capsys, "report", "--n", "3", "--format", "csv", "--cache", str(tmp_path))[1]
    b = run(capsys, "report", "--n", "3", "--format", "csv", "--cache", str(tmp_path))[1]
    assert a == b
    s1 = run(capsys, "check", "assoc", "--n", "3", "--seed", "5", "--format", "json")[1]
    s2 = run(capsys, "check", "assoc", "--n", "3", "--seed", "5", "--format", "json")[1]
    assert s1 == s2 and json.loads(s1)["items"][0]["details"]["seed"] == 5


def test_text_report(capsys):
    code, out, _ = run(capsys, "report", "--n", "3")
    assert code == 0
    assert out.rstrip().endswith("verdict: true")
    assert "[PASS] mult: (mult)" in out


def test_failing_check_exits_1(capsys, monkeypatch):
    from isoschubert import cli
    from isoschubert.certificates import corrupt_table
    from isoschubert.tablefile import load_tables

    monkeypatch.setattr(cli, "load_tables", lambda n, cache, full=None: corrupt_table(load_tables(n, cache, full)))
    code, out, _ = run(capsys, "check", "mult", "--n", "3")
    assert code == 1
    assert "[FAIL] mult" in out
