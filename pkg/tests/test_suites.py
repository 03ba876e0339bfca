import pytest

import config
from helpers import suites
from helpers.errors import CapExceeded, NotFree, UnknownSuite
from helpers.statistics import suite_stats
from helpers.suites import CheckRow, SuiteResult, list_checks, run_suite


def _raise(error):
    raise error


@pytest.fixture
def tiny_suite(monkeypatch):
    def build(seed):
        return [
            ("equal", lambda: suites._equal(1, 1)),
            ("unequal", lambda: suites._equal(1, 2)),
            ("capped", lambda: _raise(CapExceeded("vertex_cap", 24, 30))),
            ("not free", lambda: _raise(NotFree("g maps a face onto itself"))),
            ("crash", lambda: _raise(ZeroDivisionError("boom"))),
        ]
    monkeypatch.setitem(suites.SUITES, "tiny", build)
    return "tiny"


def test_unknown_suite():
    with pytest.raises(UnknownSuite) as excinfo:
        list_checks("nope")
    assert excinfo.value.exit_code == 1


def test_list_checks_qualifies_names():
    checks = list_checks("indexes")
    assert len(checks) == 20
    assert checks[0][0] == "indexes/hind E_0(Z/2)"
    everything = list_checks("all")
    assert {name.split("/")[0] for name, _ in everything} == set(suites.SUITES)


def test_check_row_json():
    row = CheckRow(3, 2, False, name="graphs/C5")
    assert row.to_json() == {"check": "graphs/C5", "expected": "3", "got": "2", "passed": False, "skipped": False}


def test_suite_result_passes_with_skips():
    assert SuiteResult("x", [CheckRow(1, 1, True), CheckRow("within caps", "cap", False, skipped=True)]).passed
    assert not SuiteResult("x", [CheckRow(1, 1, True)], interrupted=True).passed


def test_run_suite_records_every_outcome(tiny_suite):
    result = run_suite(tiny_suite)
    assert [row.name for row in result.rows] == [
        "tiny/equal", "tiny/unequal", "tiny/capped", "tiny/not free", "tiny/crash"]
    equal, unequal, capped, not_free, crash = result.rows
    assert equal.passed
    assert not unequal.passed
    assert capped.skipped
    assert not_free.got == "NotFree"
    assert crash.got == "ZeroDivisionError: boom"
    assert not result.passed

    assert (suite_stats.passed, suite_stats.failed, suite_stats.skipped) == (1, 3, 1)
    assert "📊 Suite Summary: tiny" in suite_stats.get_summary()

    with open(config.error_log_path, encoding="utf-8") as log:
        logged = log.read()
    assert "tiny/unequal" in logged
    assert "tiny/not free" in logged
    assert "tiny/capped" not in logged


def test_run_suite_stops_when_asked(tiny_suite):
    result = run_suite(tiny_suite, should_stop=lambda: True)
    assert result.interrupted
    assert result.rows == []
    assert not result.passed


def test_properties_suite_on_a_small_corpus():
    config.property_cases = 3
    result = run_suite("properties", seed=1)
    assert len(result.rows) == 8
    assert result.passed


@pytest.mark.slow
@pytest.mark.parametrize("name", ["indexes", "join-p2", "product-p2", "odd-p", "approximation", "smith",
                                  "graphs", "hypergraphs", "properties"])
def test_acceptance_suites(name):
    assert run_suite(name).passed
