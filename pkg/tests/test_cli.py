from __future__ import annotations

import json

import pytest

from geoforge.cli.main import main
from geoforge.cli.pipeline import run_pipeline
from geoforge.cli.spec import parse_pipeline_spec
from geoforge.common.errors import ParseError, UnresolvedReference

S4 = {
    "kind": "perm",
    "degree": 4,
    "generators": {"r0": "(1,2)", "r1": "(2,3)", "r2": "(3,4)"},
}
TET = {"group": "S4", "parabolics": {"0": ["r1", "r2"], "1": ["r0", "r2"], "2": ["r0", "r1"]}}


def _spec(**sections):
    return parse_pipeline_spec(json.dumps({"schema": 1, **sections}))


def _write(tmp_path, document, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


# --- Spec parsing ---


def test_bad_json_reports_its_position():
    with pytest.raises(ParseError) as info:
        parse_pipeline_spec('{\n  "schema": 1,\n  oops\n}')
    assert info.value.line == 3


def test_unsupported_schema():
    with pytest.raises(ParseError):
        parse_pipeline_spec('{"schema": 2}')


def test_dangling_group_reference():
    with pytest.raises(UnresolvedReference) as info:
        _spec(systems={"tet": {"group": "S5", "parabolics": {"0": []}}})
    assert (info.value.kind, info.value.name) == ("group", "S5")


# --- Pipelines ---


def test_tetrahedron_twist_pipeline(tetrahedron_twist_spec):
    result = run_pipeline(parse_pipeline_spec(json.dumps(tetrahedron_twist_spec)))
    steps = result.report["steps"]
    assert result.exit_code == 0
    assert [s["name"] for s in steps] == [
        "twist:cube",
        "materialize:geo",
        "reference:ref",
        "iso",
        "check:cube:flag-transitive",
        "check:cube:residually-connected",
        "check:cube:thin",
    ]
    assert [s["status"] for s in steps] == ["ok", "ok", "ok", "pass", "pass", "pass", "pass"]
    assert steps[1]["details"]["counts"] == {"{0,2}": 12, "{1}": 6, "tau": 8}


def test_empty_pipeline():
    result = run_pipeline(_spec())
    assert result.report == {"schema": 1, "steps": []}
    assert result.exit_code == 0


def test_bad_step_arguments_stop_the_run():
    spec = _spec(
        groups={"S4": S4},
        systems={"tet": TET},
        pipeline=[{"op": "materialize", "args": {}}, {"op": "reference", "args": {"name": "cube"}}],
    )
    result = run_pipeline(spec)
    assert result.exit_code == 2
    assert len(result.report["steps"]) == 1
    step = result.report["steps"][0]
    assert step["status"] == "error"
    assert step["error"].startswith("materialize.system")


def test_unknown_operation_is_an_error_step():
    result = run_pipeline(_spec(pipeline=[{"op": "teleport"}]))
    assert result.exit_code == 2
    assert result.report == {
        "schema": 1,
        "steps": [
            {
                "name": "teleport",
                "status": "error",
                "witness": {"kind": "operation", "name": "teleport"},
                "ms": result.report["steps"][0]["ms"],
                "error": "Unknown operation 'teleport'",
            }
        ],
    }


def test_dangling_generator_label_is_reported():
    spec = _spec(groups={"S4": S4}, systems={"tet": {"group": "S4", "parabolics": {"0": ["r9"]}}})
    result = run_pipeline(spec)
    assert result.exit_code == 2
    [step] = result.report["steps"]
    assert (step["name"], step["status"]) == ("definitions", "error")
    assert step["witness"] == {"kind": "generator", "name": "r9"}


@pytest.mark.parametrize("check", ["flag-transitive:bogus", "residually-connected:RC9"])
def test_unknown_check_method_is_an_input_error(check):
    spec = _spec(groups={"S4": S4}, systems={"tet": TET}, checks={"tet": [check]})
    result = run_pipeline(spec)
    assert result.exit_code == 2
    assert [s["status"] for s in result.report["steps"]] == ["error"]


def test_residue_over_every_type_is_an_input_error():
    spec = _spec(
        groups={"S4": S4},
        systems={"tet": TET},
        pipeline=[{"op": "residue", "args": {"system": "tet", "types": [0, 1, 2]}}],
    )
    result = run_pipeline(spec)
    assert result.exit_code == 2
    assert result.report["steps"][0]["status"] == "error"
    assert "proper subset" in result.report["steps"][0]["error"]


def test_disconnected_system_fails_its_check():
    spec = _spec(
        groups={"S4": S4},
        systems={"pair": {"group": "S4", "parabolics": {"0": ["r0"], "1": ["r2"]}}},
        checks={"pair": ["flag-transitive", "residually-connected"]},
    )
    result = run_pipeline(spec)
    assert result.exit_code == 1
    assert [s["status"] for s in result.report["steps"]] == ["pass", "fail"]
    assert result.report["steps"][1]["witness"]["generated"] == 4


def test_unknown_check_is_an_input_error():
    spec = _spec(groups={"S4": S4}, systems={"tet": TET}, checks={"tet": ["shiny"]})
    result = run_pipeline(spec)
    assert result.exit_code == 2
    assert result.report["steps"][0]["status"] == "error"


def test_spec_caps_apply_to_steps():
    spec = _spec(
        caps={"geometry": 5},
        groups={"S4": S4},
        systems={"tet": TET},
        pipeline=[{"op": "materialize", "args": {"system": "tet"}}],
    )
    result = run_pipeline(spec)
    assert result.exit_code == 3
    assert result.report["steps"][0]["witness"] == {"cap": 5}


def test_export_is_relative_to_the_spec_file(tmp_path):
    document = {
        "schema": 1,
        "groups": {"S4": S4},
        "systems": {"tet": TET},
        "pipeline": [
            {"op": "materialize", "args": {"system": "tet"}, "bind": "geo"},
            {"op": "export", "args": {"geometry": "geo", "path": "tet.json"}},
            {"op": "import", "args": {"path": "tet.json"}, "bind": "back"},
            {"op": "iso", "args": {"left": "geo", "right": "back"}},
        ],
    }
    result = run_pipeline(_write(tmp_path, document))
    assert result.exit_code == 0
    exported = json.loads((tmp_path / "tet.json").read_text(encoding="utf-8"))
    assert exported["types"] == ["0", "1", "2"]
    assert result.report["steps"][-1]["status"] == "pass"


# --- Command line ---


def test_check_command(tmp_path, tetrahedron_twist_spec, capsys):
    path = _write(tmp_path, tetrahedron_twist_spec)
    assert main(["check", str(path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert len(report["steps"]) == 7


def test_check_command_with_bad_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    assert main(["check", str(path)]) == 2
    assert "ParseError" in capsys.readouterr().err


def test_missing_spec_file(tmp_path):
    assert main(["check", str(tmp_path / "absent.json")]) == 2


def test_street_path_command(capsys):
    assert main(["street", "path", "--from", "on=", "--to", "on=3,5", "--verify"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["length"] == 4
    assert document["bfs_length"] == 4
    assert document["to"] == {"type": "state", "on": [3, 5]}


def test_twist_command(capsys):
    assert main(["twist", "--polytope", "square"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["polytope"] == "square"
    assert all(c["verdict"] == "pass" for c in document["checks"])


def test_wreath_command(capsys):
    assert main(["wreath", "--rank", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 48


def test_materialize_and_iso_commands(tmp_path, capsys):
    spec = _write(tmp_path, {"schema": 1, "groups": {"S4": S4}, "systems": {"tet": TET}})
    out, dot = tmp_path / "tet.json", tmp_path / "tet.dot"
    assert main(["materialize", str(spec), "--system", "tet", "--json", str(out), "--dot", str(dot)]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["counts"] == {"0": 4, "1": 6, "2": 4}
    assert dot.read_text(encoding="utf-8").startswith("graph")
    assert main(["iso", str(out), str(out)]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "pass"


def test_suite_command(capsys):
    assert main(["paper-suite", "--filter", "tetrahedron twist"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [c["id"] for c in report["criteria"]] == [1]
    assert report["criteria"][0]["status"] == "pass"


def test_suite_command_under_a_tight_cap(capsys):
    assert main(["--cap-geometry", "1", "suite", "--filter", "tetrahedron twist"]) == 3
    report = json.loads(capsys.readouterr().out)
    assert report["criteria"][0]["status"] == "cap-exceeded"
