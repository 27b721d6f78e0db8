"""Command-line entry point.

Reports are JSON on stdout; run summaries and errors go to stderr. Exit
codes: 0 all checks pass, 1 a check failed, 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

from geoforge import catalog
from geoforge.cli.context import RunContext
from geoforge.cli.messages import error_message, format_run_message, pipeline_message, suite_message
from geoforge.cli.pipeline import build_definitions, run_pipeline
from geoforge.cli.spec import load_pipeline_spec
from geoforge.cli.suite import run_suite
from geoforge.common.config import configure_logging, current_caps, load_settings, use_caps
from geoforge.common.errors import GeoforgeError
from geoforge.common.reports import CheckReport, make_report, timed, to_jsonable
from geoforge.cosetgeom.checks import check_firm_thin, check_flag_transitive, check_residually_connected
from geoforge.cosetgeom.system import CosetSystem
from geoforge.materialize.export import export, format_type, import_json
from geoforge.materialize.geometry import check_geometry_direct, materialize
from geoforge.materialize.isomorphism import colored_isomorphic
from geoforge.ops.selfdual import self_dual_choices, self_dual_twist
from geoforge.streetlight import canonical_street, parse_lamp_literal, street_distance_bfs, street_path

logger = logging.getLogger(__name__)


def _emit(document: Any) -> None:
    sys.stdout.write(json.dumps(to_jsonable(document), indent=2, sort_keys=False) + "\n")


def _note(message: str) -> None:
    sys.stderr.write(message + "\n")


def _system_checks(system: CosetSystem) -> list[CheckReport]:
    return [
        check_flag_transitive(system),
        check_residually_connected(system),
        check_firm_thin(system)[1],
    ]


def _checks_exit(reports: list[CheckReport]) -> int:
    return 0 if all(r.passed for r in reports) else 1


# --- Commands ---


def cmd_check(args: argparse.Namespace, overrides: dict[str, int | None]) -> int:
    result = run_pipeline(args.spec, overrides=overrides)
    _emit(result.report)
    _note(pipeline_message(result.report, args.spec))
    return result.exit_code


def cmd_twist(args: argparse.Namespace, overrides: dict[str, int | None]) -> int:
    S = catalog.POLYTOPES[args.polytope]()
    with use_caps(**overrides):
        if args.all:
            choices = self_dual_choices(S)
            _emit({"polytope": args.polytope, "choices": [c.to_json() for c in choices]})
            linear = sum(1 for c in choices if c.linear)
            _note(format_run_message(
                f"Self-dual twists of the {args.polytope}",
                summary=f"{len(choices)} choices, {linear} with a linear diagram",
            ))
            return 0
        result = self_dual_twist(S)
        reports = _system_checks(result.system)
    _emit({
        "polytope": args.polytope,
        "twist": result.to_json(),
        "checks": [r.to_json_dict() for r in reports],
    })
    return _checks_exit(reports)


def cmd_wreath(args: argparse.Namespace, overrides: dict[str, int | None]) -> int:
    with use_caps(**overrides):
        system = catalog.wreath_family(args.rank)
        reports = _system_checks(system)
        document = {
            "rank": args.rank,
            "order": system.group.order(),
            "types": list(system.types),
            "parabolic_orders": [system.parabolics[t].order() for t in system.types],
            "checks": [r.to_json_dict() for r in reports],
        }
    _emit(document)
    return _checks_exit(reports)


def cmd_materialize(args: argparse.Namespace, overrides: dict[str, int | None]) -> int:
    spec = load_pipeline_spec(args.spec)
    with use_caps(current_caps().merged(dict(spec.caps)), **overrides) as caps:
        ctx = RunContext(spec=spec, caps=caps, base_dir=Path(args.spec).parent)
        build_definitions(ctx)
        geo = materialize(ctx.lookup("system", args.system))
        report = check_geometry_direct(geo)
    for fmt, target in (("dot", args.dot), ("json", args.json)):
        if target:
            Path(target).write_text(export(geo, fmt), encoding="utf-8")
            logger.info("Wrote %s export to %s", fmt, target)
    _emit({
        "system": args.system,
        "counts": {format_type(t): n for t, n in geo.count_by_type().items()},
        "report": report.to_json_dict(),
    })
    return 0 if report.is_geometry else 1


def cmd_iso(args: argparse.Namespace, overrides: dict[str, int | None]) -> int:
    left, right = (
        import_json(Path(p).read_text(encoding="utf-8"), name=Path(p).stem)
        for p in (args.left, args.right)
    )
    with use_caps(**overrides), timed() as watch:
        mapping = colored_isomorphic(left, right)
    witness = None if mapping is not None else {"left": args.left, "right": args.right}
    report = make_report("colored-isomorphic", "vf2", witness, watch)
    _emit(report.to_json_dict())
    return 0 if report.passed else 1


def cmd_street_path(args: argparse.Namespace, overrides: dict[str, int | None]) -> int:
    start = canonical_street(parse_lamp_literal(args.source), "state")
    end = canonical_street(parse_lamp_literal(args.target), "state")
    path = street_path(start, end)  # type: ignore[arg-type]
    document: dict[str, Any] = {
        "from": start.to_json(),
        "to": end.to_json(),
        "length": len(path),
        "path": [e.to_json() for e in path],
    }
    if args.verify:
        document["bfs_length"] = street_distance_bfs(start, end)  # type: ignore[arg-type]
    _emit(document)
    return 0 if not args.verify or document["bfs_length"] == len(path) else 1


def cmd_suite(args: argparse.Namespace, overrides: dict[str, int | None]) -> int:
    result = run_suite(args.filter, settings=load_settings(), overrides=overrides)
    _emit(result.report)
    _note(suite_message(result.report))
    return result.exit_code


# --- Parser ---


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geoforge",
        description="Coset incidence systems, twisting and wreath constructions.",
    )
    parser.add_argument("--cap-closure", type=int, default=None, help="Max elements in a closure")
    parser.add_argument("--cap-geometry", type=int, default=None, help="Max geometry elements")
    parser.add_argument("--rank-guard", type=int, default=None, help="Max coset system rank")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="Run a pipeline file")
    p_check.add_argument("spec", help="Pipeline JSON file")
    p_check.set_defaults(handler=cmd_check)

    p_twist = sub.add_parser("twist", help="Self-dual twist of a bundled polytope")
    p_twist.add_argument("--polytope", choices=sorted(catalog.POLYTOPES), required=True)
    p_twist.add_argument("--all", action="store_true", help="Enumerate every representative choice")
    p_twist.set_defaults(handler=cmd_twist)

    p_wreath = sub.add_parser("wreath", help="The segment wreathed by Sym(r)")
    p_wreath.add_argument("--rank", type=int, required=True)
    p_wreath.set_defaults(handler=cmd_wreath)

    p_mat = sub.add_parser("materialize", help="Materialize one system of a pipeline file")
    p_mat.add_argument("spec", help="Pipeline JSON file")
    p_mat.add_argument("--system", required=True)
    p_mat.add_argument("--dot", default=None, help="Write Graphviz DOT here")
    p_mat.add_argument("--json", default=None, help="Write JSON here")
    p_mat.set_defaults(handler=cmd_materialize)

    p_iso = sub.add_parser("iso", help="Colored isomorphism of two exported geometries")
    p_iso.add_argument("left")
    p_iso.add_argument("right")
    p_iso.set_defaults(handler=cmd_iso)

    p_street = sub.add_parser("street", help="Lamplighter street geometry")
    street_sub = p_street.add_subparsers(dest="street_command", required=True)
    p_path = street_sub.add_parser("path", help="Shortest path between two states")
    p_path.add_argument("--from", dest="source", required=True, help='e.g. "on="')
    p_path.add_argument("--to", dest="target", required=True, help='e.g. "on=3,5"')
    p_path.add_argument("--verify", action="store_true", help="Compare with a BFS distance")
    p_path.set_defaults(handler=cmd_street_path)

    p_suite = sub.add_parser("paper-suite", aliases=["suite"], help="Run the regression criteria")
    p_suite.add_argument("--filter", default=None, help="Substring of a criterion name, or its id")
    p_suite.set_defaults(handler=cmd_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    """CLI entry point."""
    configure_logging()
    args = build_parser().parse_args(argv)
    overrides = {
        "closure": args.cap_closure,
        "geometry": args.cap_geometry,
        "rank_guard": args.rank_guard,
    }
    handler: Callable[[argparse.Namespace, dict[str, int | None]], int] = args.handler
    try:
        return handler(args, overrides)
    except GeoforgeError as exc:
        _note(error_message(exc, source=getattr(args, "spec", None)))
        return exc.exit_code
    except OSError as exc:
        _note(error_message(exc))
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
