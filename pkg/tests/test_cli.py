import csv
import io
import json
from importlib import resources
from pathlib import Path

import pytest

from sec121.cli import main

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(capsys, *argv):
    try:
        code = main([str(a) for a in argv])
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


class TestEvaluate:
    def test_ground_truth_diverges(self, capsys):
        code, out, _ = run(capsys, "evaluate", DATA / "ground_truth.json")
        assert code == 1
        assert "$375,000" in out and "$250,000" in out

    def test_full_qualification_consistent(self, capsys):
        code, out, _ = run(capsys, "evaluate", DATA / "full_qualification.json", "--format", "csv")
        assert code == 0
        assert list(csv.reader(io.StringIO(out)))[1] == ["500000", "500000", "0", "consistent"]

    def test_negative_month_count(self, capsys, tmp_path):
        path = write(tmp_path, "bad.json", {
            "schema_version": 1,
            "spouse_a": {"ownership": -1, "use": 30},
            "spouse_b": {"ownership": 24, "use": 24},
        })
        code, _, err = run(capsys, "evaluate", path)
        assert code == 2
        assert "spouse_a.ownership" in err

    def test_unknown_key(self, capsys, tmp_path):
        path = write(tmp_path, "bad.json", {
            "schema_version": 1,
            "spouse_a": {"ownership": 30, "use": 30, "gain": 5},
            "spouse_b": {"ownership": 24, "use": 24},
        })
        code, _, err = run(capsys, "evaluate", path)
        assert code == 2
        assert "unknown key(s): gain" in err

    def test_json_syntax_error_has_line(self, capsys, tmp_path):
        path = write(tmp_path, "bad.json", '{\n  "schema_version": 1,\n  oops\n}')
        code, _, err = run(capsys, "evaluate", path)
        assert code == 2
        assert "line 3" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "evaluate", tmp_path / "nope.json")[0] == 2

    def test_mode_override(self, capsys, tmp_path):
        path = write(tmp_path, "f.json", {
            "schema_version": 1,
            "spouse_a": {"ownership": 10, "use": 30, "qualifying_reason": True},
            "spouse_b": {"ownership": 12, "use": 30},
            "numerator_mode": "min_six",
        })
        code, out, _ = run(capsys, "evaluate", path, "--mode", "held_b2A_months", "--format", "json")
        doc = json.loads(out)
        assert doc["params"]["numerator_mode"] == "held_b2A_months"
        assert doc["outcome"]["joint_reading"]["dollars"] == 0

    def test_formats_agree(self, capsys):
        _, js, _ = run(capsys, "evaluate", DATA / "ground_truth.json", "--format", "json")
        _, cs, _ = run(capsys, "evaluate", DATA / "ground_truth.json", "--format", "csv")
        doc = json.loads(js)["outcome"]
        row = list(csv.reader(io.StringIO(cs)))[1]
        assert [int(x) for x in row[:3]] == [doc[k]["dollars"] for k in ("sum_reading", "joint_reading", "delta")]

    def test_json_round_trip(self, capsys):
        _, out, _ = run(capsys, "evaluate", DATA / "ground_truth.json", "--format", "json")
        assert json.dumps(json.loads(out), indent=2, ensure_ascii=False) + "\n" == out

    def test_bad_usage(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["evaluate"])
        assert exc.value.code == 2


class TestSweep:
    def test_full_table(self, capsys):
        code, out, _ = run(capsys, "sweep", "1..36", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 1
        assert rows[0] == ["P", "SumA", "min_six", "min_three_joint", "held_b2A_months"]
        assert len(rows) == 37
        assert rows[1] == ["1", "260417", "20833", "20833", "20833"]

    def test_upper_rows_consistent(self, capsys):
        code, out, _ = run(capsys, "sweep", "24..36", "--format", "json")
        rows = json.loads(out)["rows"]
        assert code == 0
        assert all(r[k]["dollars"] == 500_000 for r in rows for k in ("sum_a", "min_six", "min_three_joint", "held_b2A_months"))

    def test_p0(self, capsys):
        code, out, _ = run(capsys, "sweep", "0..0", "--format", "csv")
        assert code == 1
        assert list(csv.reader(io.StringIO(out)))[1] == ["0", "250000", "0", "0", "0"]

    @pytest.mark.parametrize("bad", ["5..4", "x..3", "-1..2"])
    def test_bad_range(self, capsys, bad):
        assert run(capsys, "sweep", bad)[0] == 2

    def test_table_and_csv_agree(self, capsys):
        _, table, _ = run(capsys, "sweep", "1..36")
        _, cs, _ = run(capsys, "sweep", "1..36", "--format", "csv")
        t_rows = [[c.strip().replace("$", "").replace(",", "") for c in line.split("|")] for line in table.splitlines()[2:]]
        assert t_rows == list(csv.reader(io.StringIO(cs)))[1:]


class TestSearch:
    def test_table3_domain(self, capsys):
        code, out, _ = run(capsys, "search", DATA / "table3_domain.json", "--limit", "1", "--format", "json")
        (w,) = json.loads(out)["witnesses"]
        assert code == 1
        assert w["facts"]["spouse_b"]["since_prior_exclusion"] == 1
        assert w["facts"]["spouse_a"] == {"ownership": 120, "use": 120, "since_prior_exclusion": 120, "qualifying_reason": False}

    def test_singleton_full_qualification(self, capsys, tmp_path):
        path = write(tmp_path, "d.json", {
            "schema_version": 1,
            "ranges": {"own_a": [30, 30], "use_a": [30, 30], "prior_a": [24, 24],
                       "own_b": [24, 24], "use_b": [24, 24], "prior_b": [24, 24]},
        })
        code, out, _ = run(capsys, "search", path)
        assert code == 0
        assert "no divergent" in out

    def test_limit(self, capsys):
        code, out, _ = run(capsys, "search", DATA / "table3_domain.json", "--limit", "1")
        assert code == 1
        assert len(out.splitlines()) == 1

    def test_domain_bound(self, capsys, tmp_path):
        doc = {
            "schema_version": 1,
            "ranges": {"own_a": [0, 99], "use_a": [0, 99], "prior_a": [0, 99],
                       "own_b": [0, 9], "use_b": [0, 0], "prior_b": [0, 0]},
            "reasons": {"a": True},
        }
        path = write(tmp_path, "d.json", doc)
        code, _, err = run(capsys, "search", path)
        assert code == 2
        assert "safety bound" in err
        assert run(capsys, "search", path, "--override-domain-bound", "--limit", "1")[0] == 1

    def test_missing_range(self, capsys, tmp_path):
        path = write(tmp_path, "d.json", {"schema_version": 1, "ranges": {"own_a": [0, 1]}})
        code, _, err = run(capsys, "search", path)
        assert code == 2
        assert "missing key(s)" in err


class TestGrid:
    def test_cells(self, capsys):
        code, out, _ = run(capsys, "grid", DATA / "grid_facts.json", "--unit", "years", "--format", "json")
        cells = {(c["unit"], c["rule"]): c for c in json.loads(out)["cells"]}
        assert code == 1
        mx = cells[("years", "maximum")]
        assert (mx["sum_reading"]["dollars"], mx["joint_reading"]["dollars"], mx["converged"]) == (375_000, 500_000, False)
        avg = cells[("years", "average")]
        assert (avg["sum_reading"]["dollars"], avg["joint_reading"]["dollars"], avg["converged"]) == (375_000, 375_000, True)

    def test_average_only_converges(self, capsys):
        code, _, _ = run(capsys, "grid", DATA / "grid_facts.json", "--unit", "years", "--rule", "average")
        assert code == 0

    def test_months_minimum(self, capsys):
        _, out, _ = run(capsys, "grid", DATA / "grid_facts.json", "--unit", "months", "--rule", "minimum", "--format", "csv")
        assert list(csv.reader(io.StringIO(out)))[1] == ["months", "minimum", "375000", "250000", "diverge"]

    def test_missing_unit(self, capsys, tmp_path):
        path = write(tmp_path, "g.json", {"schema_version": 1, "units": {"years": {
            "spouse_a": {"ownership": 2, "use": 2}, "spouse_b": {"ownership": 1, "use": 1}}}})
        code, _, err = run(capsys, "grid", path, "--unit", "days")
        assert code == 2
        assert "days" in err


@pytest.fixture
def fixture_dir(tmp_path):
    src = resources.files("sec121").joinpath("fixtures")
    for item in src.iterdir():
        if item.name.endswith(".txt"):
            (tmp_path / item.name).write_text(item.read_text(encoding="utf-8"), encoding="utf-8")
    return tmp_path


class TestValidate:
    def test_two_runs(self, capsys):
        code, out, _ = run(capsys, "validate", "--runs", "2", "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert doc["determinism"] == "pass"
        assert [r["overall"] for r in doc["runners"]] == ["pass"] * 4

    def test_single_run_skips_determinism(self, capsys):
        code, out, _ = run(capsys, "validate", "--runs", "1")
        assert code == 0
        assert "skipped" in out

    def test_corrupted_cell(self, capsys, fixture_dir):
        path = fixture_dir / "run_joint_prior_table.txt"
        path.write_text(path.read_text().replace("23 | 489583", "23 | 489584"))
        code, out, _ = run(capsys, "validate", "--runs", "1", "--fixtures", fixture_dir)
        assert code == 1
        assert "(row 23, column SumA, expected 489584, actual 489583)" in out

    def test_missing_fixture(self, capsys, fixture_dir):
        (fixture_dir / "run_case_no_inconsistency.txt").unlink()
        code, _, err = run(capsys, "validate", "--fixtures", fixture_dir)
        assert code == 2
        assert "missing" in err
