import csv
import io
import json

import pytest

from spexlab.suites import Report, suite_lemmas, suite_theorem11, suite_theorem15

SMALL_GRID = {"t": (1, 2), "l": (2,), "n": (20, 40)}


def test_report_round_trip():
    rep = suite_theorem11(20, 2, 2)
    again = Report.from_json(rep.to_json())
    assert again.to_json() == rep.to_json()
    assert again.all_pass == rep.all_pass


def test_round_trip_rejects_inconsistent_all_pass():
    d = suite_theorem11(20, 2, 2).to_dict()
    d["all_pass"] = not d["all_pass"]
    with pytest.raises(ValueError):
        Report.from_dict(d)


def test_failing_check_does_not_abort():
    rep = Report("demo", {})
    rep.add("boom", "raises", lambda: 1 / 0)
    rep.add("ok", "passes", lambda: (1, 1, True))
    assert [c.passed for c in rep.checks] == [False, True]
    assert "ZeroDivisionError" in rep.checks[0].actual
    assert not rep.all_pass


@pytest.mark.parametrize("n, t, l", [(9, 2, 2), (20, 2, 2), (30, 2, 2)])
def test_odd_cycle_suite_passes(n, t, l):
    rep = suite_theorem11(n, t, l)
    assert rep.all_pass, rep.to_json()
    names = {c.name for c in rep.checks}
    assert {"a-free", "b-edges"} <= names


def test_odd_cycle_suite_skips_vacuous_saturation():
    rep = suite_theorem11(9, 2, 2)
    assert any("saturated" in s for s in rep.params["skipped"])


@pytest.mark.parametrize("n, t, l", [(30, 2, 2), (40, 2, 3)])
def test_even_cycle_suite_passes(n, t, l):
    rep = suite_theorem15(n, t, l)
    assert rep.all_pass, rep.to_json()
    names = {c.name for c in rep.checks}
    assert {"a-free", "b-band-quadratic", "c-per-vertex", "e-local-max", "f-saturated"} <= names


def test_even_cycle_suite_large_n_skips_saturation():
    rep = suite_theorem15(100, 1, 2)
    assert rep.all_pass
    assert "f-saturated" not in {c.name for c in rep.checks}


def test_lemmas_suite_small_grid():
    rep = suite_lemmas(SMALL_GRID)
    assert rep.all_pass, [c.to_dict() for c in rep.checks if not c.passed]
    assert len(rep.checks) > 10


def test_suites_are_deterministic():
    assert suite_theorem15(30, 2, 2, seed=3).to_json() == suite_theorem15(30, 2, 2, seed=3).to_json()
    assert suite_lemmas(SMALL_GRID).to_json() == suite_lemmas(SMALL_GRID).to_json()


def test_timing_only_when_requested():
    rep = suite_theorem11(20, 2, 2)
    assert "elapsed" not in rep.to_dict()
    assert "elapsed" in json.loads(rep.to_json(timing=True))


def test_csv_has_one_row_per_check():
    rep = suite_theorem11(20, 2, 2)
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0] == ["suite", "check", "description", "expected", "actual", "pass"]
    assert len(rows) == len(rep.checks) + 1
