from __future__ import annotations

import pytest

from geoforge.common.config import (
    Caps,
    current_caps,
    load_settings,
    parse_caps_override,
    use_caps,
)
from geoforge.common.errors import CapExceeded, ConfigError, GeoforgeError, ParseError, UnresolvedReference
from geoforge.common.reports import make_report, timed, to_jsonable
from geoforge.groupcore import parse_permutation


def test_caps_override_pairs_and_json():
    assert parse_caps_override("closure=1000, geometry=50") == {"closure": 1000, "geometry": 50}
    assert parse_caps_override('{"rank-guard": 4}') == {"rank_guard": 4}
    assert parse_caps_override("  ") == {}


@pytest.mark.parametrize("raw", ["bogus=3", "closure=many", "closure", '{"closure": [1]}', "{oops"])
def test_caps_override_rejects(raw):
    with pytest.raises(ConfigError):
        parse_caps_override(raw)


def test_merged_ignores_none_and_validates():
    caps = Caps().merged({"geometry": 7, "closure": None})
    assert caps.geometry == 7
    assert caps.closure == Caps().closure
    with pytest.raises(ConfigError):
        Caps().merged({"geometry": 0})


def test_use_caps_nests_and_restores():
    before = current_caps()
    with use_caps(geometry=11) as outer:
        assert current_caps().geometry == 11
        with use_caps(closure=5):
            assert current_caps().geometry == 11
            assert current_caps().closure == 5
        assert current_caps() == outer
    assert current_caps() == before


def test_load_settings_reads_directory_and_environment(tmp_path, monkeypatch):
    (tmp_path / "settings.yaml").write_text(
        "caps:\n  geometry: 123\nsuite:\n  sample_size: 9\n  seed: 4\n", encoding="utf-8"
    )
    monkeypatch.setenv("GEOFORGE_CONFIG_DIR", str(tmp_path))
    monkeypatch.setenv("GEOFORGE_CAPS", "closure=77")
    settings = load_settings()
    assert settings.caps.geometry == 123
    assert settings.caps.closure == 77
    assert (settings.sample_size, settings.seed) == (9, 4)


def test_settings_yaml_must_be_a_mapping(tmp_path, monkeypatch):
    (tmp_path / "settings.yaml").write_text("- 1\n- 2\n", encoding="utf-8")
    monkeypatch.setenv("GEOFORGE_CONFIG_DIR", str(tmp_path))
    monkeypatch.delenv("GEOFORGE_CAPS", raising=False)
    with pytest.raises(ConfigError):
        load_settings()


# --- Errors and reports ---


def test_exit_codes():
    assert GeoforgeError("x").exit_code == 1
    assert ParseError("bad", 3, 4).exit_code == 2
    assert CapExceeded(10, 11).exit_code == 3
    assert "line 3, col 4" in str(ParseError("bad", 3, 4))
    assert str(UnresolvedReference("system", "tet")) == "Unknown system 'tet'"


def test_to_jsonable_sorts_sets_and_renders_elements():
    p = parse_permutation("(1,2)", 3)
    assert to_jsonable(frozenset({2, 1})) == [1, 2]
    assert to_jsonable({"g": p, "J": (0, 1)}) == {"g": "(1,2)", "J": [0, 1]}


def test_make_report_verdict_follows_witness():
    with timed() as watch:
        pass
    ok = make_report("thin", "parabolic-index", None, watch)
    bad = make_report("thin", "parabolic-index", {"i": 0, "index": 3}, watch)
    assert ok.passed and not bad.passed
    assert bad.to_json_dict()["witness"] == {"i": 0, "index": 3}
    assert set(ok.to_json_dict()) == {
        "property", "verdict", "method", "witness", "ms", "conditional", "details",
    }


def test_package_exports_and_report_property_field():
    import geoforge

    report = geoforge.CheckReport(property="firm", verdict="pass", method="parabolic-index")
    assert report.property == "firm"
    assert report.passed
    assert set(geoforge.__all__) >= {"CheckReport", "CosetSystem", "GeoforgeError"}
