import csv
import io
import json

import pytest

from testcover.cli import main


@pytest.fixture
def inst_file(tmp_path):
    p = tmp_path / "inst.json"
    p.write_text('{"n": 4, "r": 1, "tests": [[0], [1], [2], [3]]}')
    return p


def test_solve(inst_file, tmp_path, capsys):
    out = tmp_path / "sol.json"
    assert main(["solve", "--input", str(inst_file), "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["picks"] == [0, 1, 2]
    assert [s["measure_after"] for s in doc["trace"]] == [3, 1, 0]
    first = out.read_bytes()
    assert main(["solve", "--input", str(inst_file), "--output", str(out)]) == 0
    assert out.read_bytes() == first


def test_solve_infeasible_writes_nothing(inst_file, tmp_path):
    out = tmp_path / "sol.json"
    assert main(["solve", "--input", str(inst_file), "--r", "3", "--output", str(out)]) == 2
    assert not out.exists()


@pytest.mark.parametrize("text", ['{"n": 4, "tests": [[0], [9]]}', "not json", '{"n": 4}'])
def test_parse_error(tmp_path, text, capsys):
    p = tmp_path / "bad.json"
    p.write_text(text)
    assert main(["solve", "--input", str(p)]) == 3
    assert "parse error" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["solve", "--input", str(tmp_path / "nope.json")]) == 3


def test_exact_and_budget(inst_file, capsys):
    assert main(["exact", "--input", str(inst_file)]) == 0
    assert json.loads(capsys.readouterr().out)["m_star"] == 3
    assert main(["exact", "--input", str(inst_file), "--oracle-budget", "0"]) == 4


def test_bounds_json_and_csv(inst_file, capsys):
    assert main(["bounds", "--input", str(inst_file)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["assertions_passed"] == "pass" and rep["m_star"] == 3
    assert main(["bounds", "--input", str(inst_file), "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert rows[0]["sga_size"] == "3" and rows[0]["assertions_passed"] == "pass"


def test_trace(inst_file, capsys):
    assert main(["trace", "--input", str(inst_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["potential"]["checks"]["monotone"] is True
    assert len(doc["steps"]) == 3


def test_gen(tmp_path, capsys):
    assert main(["gen", "--n", "5", "--t", "6", "--seed", "3", "--r", "2"]) == 0
    a = capsys.readouterr().out
    assert main(["gen", "--n", "5", "--t", "6", "--seed", "3", "--r", "2"]) == 0
    assert capsys.readouterr().out == a
    assert json.loads(a)["r"] == 2
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"kind": "barcode", "sequences": ["ab", "cd"]}))
    assert main(["gen", "--input", str(spec)]) == 0
    assert json.loads(capsys.readouterr().out)["tests"] == [[0], [1]]


def test_sweep_small(tmp_path, capsys):
    out = tmp_path / "s.csv"
    summ = tmp_path / "summary.csv"
    args = ["sweep", "--n-range", "4-5", "--r-range", "1,2", "--seeds", "3", "--output", str(out), "--summary", str(summ)]
    assert main(args) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 12
    assert all(r["assertions_passed"] == "pass" for r in rows)
    assert len(list(csv.DictReader(summ.open()))) == 4


def test_sweep_skip_oracle(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--n-range", "4", "--r-range", "1", "--seeds", "4", "--oracle-budget", "0", "--output", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert all(r["status"] == "oracle-skipped" and r["m_star"] == "" and r["sga_size"] != "" for r in rows)


def test_sweep_empty_range(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--n-range", "", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1 and lines[0].startswith("n,t,r,seed,m_star,sga_size,ratio,rho1,hash_b,")


def test_sweep_workers_same_output(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    base = ["sweep", "--n-range", "4-6", "--r-range", "1-2", "--seeds", "4", "--seed", "9"]
    assert main(base + ["--output", str(a)]) == 0
    assert main(base + ["--workers", "2", "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
