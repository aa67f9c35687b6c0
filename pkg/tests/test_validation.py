import shutil
from importlib import resources

import pytest

from sec121 import StatuteParams
from sec121.validation import (
    FixtureError,
    determinism_check,
    load_cases,
    load_sweep_table,
    parse_inputs,
    run_all_validation_tests,
    run_case_no_inconsistency,
    run_case_with_inconsistency,
    run_joint_prior_table,
    run_suite,
    suite_serialization,
)


@pytest.fixture
def fixture_copy(tmp_path):
    src = resources.files("sec121").joinpath("fixtures")
    for name in ("run_case_no_inconsistency.txt", "run_case_with_inconsistency.txt",
                 "run_all_validation_tests.txt", "run_joint_prior_table.txt"):
        (tmp_path / name).write_text(src.joinpath(name).read_text(encoding="utf-8"), encoding="utf-8")
    return tmp_path


def amounts(case):
    return dict(case.actual)


def test_no_inconsistency_runner():
    r = run_case_no_inconsistency()
    assert r.overall
    (case,) = r.cases
    assert amounts(case)["sum_reading"] == amounts(case)["joint_reading"] == 500_000
    assert run_case_no_inconsistency().canonical_serialization == r.canonical_serialization


def test_no_inconsistency_with_halved_limits():
    r = run_case_no_inconsistency(StatuteParams(base_limit=125_000, joint_limit=250_000))
    assert r.overall
    assert amounts(r.cases[0])["sum_reading"] == 250_000
    assert amounts(r.cases[0])["diverges"] is False


def test_with_inconsistency_runner():
    r = run_case_with_inconsistency()
    assert r.overall
    got = amounts(r.cases[0])
    assert (got["sum_reading"], got["joint_reading"]) == (375_000, 250_000)
    assert got["sum_reading"] - got["joint_reading"] == 125_000


def test_with_inconsistency_reason_false_fails_fixture(fixture_copy):
    path = fixture_copy / "run_case_with_inconsistency.txt"
    path.write_text(path.read_text().replace("B=12,12,never,true", "B=12,12,never,false"))
    r = run_case_with_inconsistency(fixtures_dir=fixture_copy)
    assert not r.overall
    got = amounts(r.cases[0])
    assert (got["sum_reading"], got["joint_reading"]) == (250_000, 0)


def test_all_validation_tests_parts():
    r = run_all_validation_tests()
    assert r.overall, [c.detail for c in r.failures()]
    labels = [c.label for c in r.cases]
    assert labels == [
        "full_qualification", "partial_qualification", "asymmetric_qualification",
        "determinism_rerun", "search_vary_spouse_b", "search_vary_spouse_a",
    ]
    by = {c.label: amounts(c) for c in r.cases}
    assert (by["partial_qualification"]["sum_reading"], by["partial_qualification"]["joint_reading"]) == (437_500, 375_000)
    for label in ("search_vary_spouse_b", "search_vary_spouse_a"):
        assert round(by[label]["sum_reading"]) == 489_583
        assert round(by[label]["joint_reading"]) == 479_167
        assert by[label]["witnesses"] == 23


def test_all_validation_tests_parallel_is_identical():
    assert run_all_validation_tests(workers=2).canonical_serialization == run_all_validation_tests().canonical_serialization


def test_joint_prior_table():
    report, rows = run_joint_prior_table()
    assert report.overall
    assert len(rows) == 36
    row5 = dict(report.cases[4].actual)
    assert [round(v) for v in row5.values()] == [302_083, 104_167, 104_167, 104_167]
    assert all(all(v == 500_000 for v in dict(c.actual).values()) for c in report.cases[24:])


def test_joint_prior_table_reports_cell(fixture_copy):
    path = fixture_copy / "run_joint_prior_table.txt"
    path.write_text(path.read_text().replace("5 | 302083 | 104167", "5 | 302083 | 104168"))
    report, _ = run_joint_prior_table(fixtures_dir=fixture_copy)
    assert not report.overall
    (bad,) = report.failures()
    assert "(row 5, column min_six, expected 104168, actual 104167)" in bad.detail


def test_missing_fixture(tmp_path):
    with pytest.raises(FixtureError):
        run_case_no_inconsistency(fixtures_dir=tmp_path)


def test_malformed_fixture(fixture_copy):
    (fixture_copy / "run_joint_prior_table.txt").write_text("1 | 2 | 3\n")
    with pytest.raises(FixtureError):
        load_sweep_table(fixture_copy)


def test_parse_inputs():
    c = parse_inputs("A=30,30,never,false; B=24,12,5,true")
    assert c.spouse_a.since_prior_exclusion is None
    assert (c.spouse_b.ownership, c.spouse_b.use, c.spouse_b.since_prior_exclusion, c.spouse_b.qualifying_reason) == (24, 12, 5, True)


def test_fixture_rows_are_data():
    assert [c.label for c in load_cases("run_all_validation_tests.txt")][-1] == "search_witness"
    assert len(load_sweep_table()) == 36


@pytest.mark.parametrize("n", [2, 5])
def test_determinism_check(n):
    assert determinism_check(n)


def test_determinism_check_detects_fault():
    def fault(i, blob):
        return blob + b"x" if i == 1 else blob

    assert not determinism_check(2, fault=fault)


def test_determinism_check_needs_two_runs():
    with pytest.raises(ValueError):
        determinism_check(1)


def test_serialization_has_no_volatile_data():
    blob = suite_serialization(run_suite()).decode()
    assert blob.isascii()
    for token in ("time", "date", "host", "pid"):
        assert f'"{token}"' not in blob
