from __future__ import annotations

import pytest

from geoforge.cli.suite import CRITERIA, paper_suite, run_criterion, run_suite

QUICK = {1, 2, 8}


def _criterion(cid):
    return next(c for c in CRITERIA if c.id == cid)


def test_criteria_are_numbered_one_to_ten():
    assert sorted(c.id for c in CRITERIA) == list(range(1, 11))


@pytest.mark.parametrize("cid", sorted(QUICK))
def test_quick_criteria_pass(cid, suite_settings):
    entry = run_criterion(_criterion(cid), suite_settings)
    assert entry["status"] == "pass", entry["details"]


@pytest.mark.slow
@pytest.mark.parametrize("cid", sorted({c.id for c in CRITERIA} - QUICK))
def test_slow_criteria_pass(cid, suite_settings):
    entry = run_criterion(_criterion(cid), suite_settings)
    assert entry["status"] == "pass", entry["details"]


def test_filter_by_id_and_by_name(suite_settings):
    by_id = run_suite("2", settings=suite_settings)
    assert [e["id"] for e in by_id.entries] == [2]
    by_name = run_suite("JOIN", settings=suite_settings)
    assert [e["id"] for e in by_name.entries] == [8]
    assert by_name.exit_code == 0
    assert by_name.report["schema"] == 1


def test_empty_selection_passes(suite_settings):
    result = run_suite("no such criterion", settings=suite_settings)
    assert result.entries == []
    assert result.exit_code == 0


def test_cap_hit_is_reported_not_raised(suite_settings):
    result = run_suite("1", settings=suite_settings, overrides={"geometry": 1})
    assert result.entries[0]["status"] == "cap-exceeded"
    assert "cap 1" in result.entries[0]["details"]["error"]
    assert result.exit_code == 3


def test_paper_suite_is_the_suite_runner():
    assert paper_suite is run_suite
