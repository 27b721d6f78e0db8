"""Pipeline runner: build the declared objects, run the steps, collect the report.

Operations are registered with ``@register_op`` together with a pydantic
model for their arguments, so a step's arguments are type-checked before
the operation runs.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from geoforge.cgroups.families import builtin_family
from geoforge.cgroups.generators import (
    GeneratorSystem,
    cgroup_system,
    check_intersection_property,
    check_string_property,
    halve,
)
from geoforge.cli.context import RunContext
from geoforge.cli.spec import (
    ActionDef,
    FamilyGroupDef,
    PermGroupDef,
    PipelineSpec,
    ProductGroupDef,
    SemidirectGroupDef,
    load_pipeline_spec,
    type_label,
)
from geoforge.common.config import Caps, current_caps, use_caps
from geoforge.common.errors import (
    GeoforgeError,
    InputError,
    MixedGroupOperands,
    ParseError,
    UnresolvedReference,
)
from geoforge.common.reports import CheckReport, make_report, timed, to_jsonable
from geoforge.cosetgeom.checks import (
    check_firm_thin,
    check_flag_transitive,
    check_product_of_intersections,
    check_residually_connected,
)
from geoforge.cosetgeom.system import CosetSystem, normalize_by_borel, residue_system
from geoforge.groupcore.groups import Element, FiniteGroup, PermGroup, ProductGroup
from geoforge.groupcore.permutation import parse_permutation
from geoforge.groupcore.subgroups import Subgroup
from geoforge.materialize.export import export, format_type, import_json
from geoforge.materialize.geometry import check_geometry_direct, join, materialize
from geoforge.materialize.isomorphism import colored_isomorphic
from geoforge.materialize.references import cube_reference
from geoforge.ops.actions import ActionSpec, ConjugationAction, ImagesAction, TrivialAction
from geoforge.ops.products import direct_product, semidirect
from geoforge.ops.selfdual import self_dual_twist
from geoforge.ops.twisting import check_admissible, twist
from geoforge.ops.wreath import wreath

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 1

StepStatus = Literal["ok", "pass", "fail", "error"]


# --- Step outcomes and the registry ---


@dataclass
class StepOutcome:
    """What an operation produced: a value to bind and/or a verdict."""

    value: Any = None
    kind: str | None = None
    report: CheckReport | None = None
    details: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Operation:
    name: str
    args_model: type[BaseModel]
    run: Callable[[RunContext, Any], StepOutcome]


OPERATIONS: dict[str, Operation] = {}


def register_op(
    name: str, args_model: type[BaseModel]
) -> Callable[[Callable[[RunContext, Any], StepOutcome]], Callable[[RunContext, Any], StepOutcome]]:
    def decorator(
        func: Callable[[RunContext, Any], StepOutcome],
    ) -> Callable[[RunContext, Any], StepOutcome]:
        OPERATIONS[name] = Operation(name, args_model, func)
        return func

    return decorator


class _Args(BaseModel):
    model_config = ConfigDict(extra="forbid")


# --- Definitions ---


def parse_element(group: FiniteGroup, text: str) -> Element:
    """A generator label of ``group`` or, for permutation groups, cycle notation."""
    if text in group.generators:
        return group.generators[text]
    if isinstance(group, PermGroup):
        return parse_permutation(text, group.degree)
    raise ParseError(f"Cannot read {text!r} as an element of {group.name or 'the group'}", 1, 1)


def _labelled(group: FiniteGroup, labels: list[str]) -> Subgroup:
    elements = []
    for label in labels:
        if label not in group.generators:
            raise UnresolvedReference("generator", label)
        elements.append(group.generators[label])
    return Subgroup(group, elements)


def build_definitions(ctx: RunContext) -> None:
    """Construct the declared groups, actions and systems in dependency order."""
    spec = ctx.spec
    building: set[str] = set()

    def group(name: str) -> FiniteGroup:
        if name in ctx.groups:
            return ctx.groups[name]
        if name not in spec.groups or name in building:
            raise UnresolvedReference("group", name)
        building.add(name)
        definition = spec.groups[name]
        result: FiniteGroup
        if isinstance(definition, PermGroupDef):
            result = PermGroup.from_cycles(definition.generators, definition.degree, name=name)
        elif isinstance(definition, ProductGroupDef):
            result = ProductGroup(
                [group(f) for f in definition.factors], labels=definition.factors, name=name
            )
        elif isinstance(definition, FamilyGroupDef):
            generators = builtin_family(definition.family, definition.rank)
            ctx.generator_systems[name] = generators
            result = generators.group
        elif isinstance(definition, SemidirectGroupDef):
            act = action(definition.action)
            result = semidirect(act.target, act.actor, act, name=name)
        else:  # pragma: no cover
            raise ParseError(f"Unknown group kind for {name!r}", 1, 1)
        ctx.groups[name] = result
        return result

    def action(name: str) -> ActionSpec:
        if name in ctx.actions:
            return ctx.actions[name]
        if name not in spec.actions:
            raise UnresolvedReference("action", name)
        ctx.actions[name] = _build_action(name, spec.actions[name], group)
        return ctx.actions[name]

    for name in spec.groups:
        group(name)
    for name in spec.actions:
        action(name)
    for name, definition in spec.systems.items():
        parent = group(definition.group)
        ctx.systems[name] = CosetSystem(
            parent,
            {type_label(t): _labelled(parent, gens) for t, gens in definition.parabolics.items()},
            name=name,
        )
    logger.info(
        "Built %d groups, %d actions, %d systems",
        len(ctx.groups),
        len(ctx.actions),
        len(ctx.systems),
    )


def _build_action(
    name: str, definition: ActionDef, group: Callable[[str], FiniteGroup]
) -> ActionSpec:
    target, actor = group(definition.target), group(definition.actor)
    if definition.kind == "trivial":
        return TrivialAction(target, actor, name=name)
    if definition.kind == "conjugation":
        if not isinstance(target, PermGroup) or not isinstance(actor, PermGroup):
            raise MixedGroupOperands("Conjugation actions need permutation groups")
        return ConjugationAction(target, actor, name=name)
    images = {
        b: {a: parse_element(target, text) for a, text in per_b.items()}
        for b, per_b in definition.images.items()
    }
    return ImagesAction(target, actor, images, name=name).validate("exhaustive")


def _generators(ctx: RunContext, name: str) -> GeneratorSystem:
    if name in ctx.generator_systems:
        return ctx.generator_systems[name]
    group = ctx.lookup("group", name)
    return GeneratorSystem(group, dict(group.generators), name=name)


def _reps(raw: list[Any] | None) -> list[Any] | None:
    return None if raw is None else [type_label(r) for r in raw]


# --- Operations ---


class CgroupArgs(_Args):
    generators: str


@register_op("cgroup_system", CgroupArgs)
def _op_cgroup(ctx: RunContext, args: CgroupArgs) -> StepOutcome:
    system = cgroup_system(_generators(ctx, args.generators))
    return StepOutcome(system, "system", details={"order": system.group.order()})


class ProductArgs(_Args):
    alpha: str
    beta: str


@register_op("direct_product", ProductArgs)
def _op_direct_product(ctx: RunContext, args: ProductArgs) -> StepOutcome:
    system = direct_product(ctx.lookup("system", args.alpha), ctx.lookup("system", args.beta))
    return StepOutcome(system, "system", details={"types": list(system.types)})


class TwistArgs(_Args):
    alpha: str
    beta: str
    action: str
    reps: list[Any] | None = None


@register_op("twist", TwistArgs)
def _op_twist(ctx: RunContext, args: TwistArgs) -> StepOutcome:
    system = twist(
        ctx.lookup("system", args.alpha),
        ctx.lookup("system", args.beta),
        ctx.lookup("action", args.action),
        _reps(args.reps),
    )
    return StepOutcome(system, "system", details=_system_summary(system))


class WreathArgs(_Args):
    alpha: str
    beta: str
    omega: dict[str, str]
    degree: int = Field(gt=0)
    reps: list[Any] | None = None


@register_op("wreath", WreathArgs)
def _op_wreath(ctx: RunContext, args: WreathArgs) -> StepOutcome:
    images = {b: parse_permutation(text, args.degree) for b, text in args.omega.items()}
    system = wreath(
        ctx.lookup("system", args.alpha), ctx.lookup("system", args.beta), images, _reps(args.reps)
    )
    return StepOutcome(system, "system", details=_system_summary(system))


class SelfDualArgs(_Args):
    generators: str
    reps: list[Any] | None = None


@register_op("self_dual_twist", SelfDualArgs)
def _op_self_dual(ctx: RunContext, args: SelfDualArgs) -> StepOutcome:
    result = self_dual_twist(_generators(ctx, args.generators), _reps(args.reps))
    return StepOutcome(result.system, "system", details=result.to_json())


class HalveArgs(_Args):
    generators: str
    a: int
    b: int


@register_op("halve", HalveArgs)
def _op_halve(ctx: RunContext, args: HalveArgs) -> StepOutcome:
    result = halve(_generators(ctx, args.generators), args.a, args.b)
    return StepOutcome(
        result.system, "generators", details={"order": result.order, "index": result.index}
    )


class ResidueArgs(_Args):
    system: str
    types: list[Any]


@register_op("residue", ResidueArgs)
def _op_residue(ctx: RunContext, args: ResidueArgs) -> StepOutcome:
    system = residue_system(ctx.lookup("system", args.system), [type_label(t) for t in args.types])
    return StepOutcome(system, "system", details={"types": list(system.types)})


class SystemArgs(_Args):
    system: str


@register_op("normalize", SystemArgs)
def _op_normalize(ctx: RunContext, args: SystemArgs) -> StepOutcome:
    system = normalize_by_borel(ctx.lookup("system", args.system))
    return StepOutcome(system, "system", details={"order": system.group.order()})


@register_op("materialize", SystemArgs)
def _op_materialize(ctx: RunContext, args: SystemArgs) -> StepOutcome:
    geo = materialize(ctx.lookup("system", args.system))
    counts = {format_type(t): n for t, n in geo.count_by_type().items()}
    return StepOutcome(geo, "geometry", details={"counts": counts})


class ReferenceArgs(_Args):
    name: Literal["cube"]


@register_op("reference", ReferenceArgs)
def _op_reference(ctx: RunContext, args: ReferenceArgs) -> StepOutcome:
    return StepOutcome(cube_reference(), "geometry")


class JoinArgs(_Args):
    geometries: list[str] = Field(min_length=1)


@register_op("join", JoinArgs)
def _op_join(ctx: RunContext, args: JoinArgs) -> StepOutcome:
    return StepOutcome(join([ctx.lookup("geometry", g) for g in args.geometries]), "geometry")


class ImportArgs(_Args):
    path: str


@register_op("import", ImportArgs)
def _op_import(ctx: RunContext, args: ImportArgs) -> StepOutcome:
    path = ctx.resolve_path(args.path)
    return StepOutcome(import_json(path.read_text(encoding="utf-8"), name=path.stem), "geometry")


class ExportArgs(_Args):
    geometry: str
    path: str
    format: Literal["json", "dot"] = "json"


@register_op("export", ExportArgs)
def _op_export(ctx: RunContext, args: ExportArgs) -> StepOutcome:
    path = ctx.resolve_path(args.path)
    path.write_text(export(ctx.lookup("geometry", args.geometry), args.format), encoding="utf-8")
    ctx.outputs.append(path)
    return StepOutcome(details={"path": str(path)})


class IsoArgs(_Args):
    left: str
    right: str


@register_op("iso", IsoArgs)
def _op_iso(ctx: RunContext, args: IsoArgs) -> StepOutcome:
    with timed() as watch:
        mapping = colored_isomorphic(
            ctx.lookup("geometry", args.left), ctx.lookup("geometry", args.right)
        )
    witness = None if mapping is not None else {"left": args.left, "right": args.right}
    return StepOutcome(report=make_report("colored-isomorphic", "vf2", witness, watch))


class CheckArgs(_Args):
    system: str
    property: str


@register_op("check", CheckArgs)
def _op_check(ctx: RunContext, args: CheckArgs) -> StepOutcome:
    return StepOutcome(report=run_system_check(ctx.lookup("system", args.system), args.property))


class GeneratorCheckArgs(_Args):
    generators: str
    property: Literal["string", "intersection-property"]
    mode: Literal["full", "reduced2E16", "reduced"] = "full"


@register_op("check_generators", GeneratorCheckArgs)
def _op_check_generators(ctx: RunContext, args: GeneratorCheckArgs) -> StepOutcome:
    S = _generators(ctx, args.generators)
    if args.property == "string":
        return StepOutcome(report=check_string_property(S))
    return StepOutcome(report=check_intersection_property(S, args.mode))


class AdmissibleArgs(_Args):
    alpha: str
    beta: str
    action: str


@register_op("admissible", AdmissibleArgs)
def _op_admissible(ctx: RunContext, args: AdmissibleArgs) -> StepOutcome:
    with timed() as watch:
        result = check_admissible(
            ctx.lookup("system", args.alpha),
            ctx.lookup("system", args.beta),
            ctx.lookup("action", args.action),
        )
    witness = next(({"orbit": list(L)} for L, valid in result.valid.items() if not valid), None)
    report = make_report("admissible", "orbit-tables", witness, watch, details=result.to_json())
    return StepOutcome(report=report)


class GeometryArgs(_Args):
    geometry: str


@register_op("geometry_report", GeometryArgs)
def _op_geometry_report(ctx: RunContext, args: GeometryArgs) -> StepOutcome:
    with timed() as watch:
        result = check_geometry_direct(ctx.lookup("geometry", args.geometry))
    failing = [k for k, v in result.to_json_dict().items() if v is False]
    report = make_report(
        "geometry", "direct", failing or None, watch, details=result.to_json_dict()
    )
    return StepOutcome(report=report)


# --- Checks by name ---


def run_system_check(system: CosetSystem, prop: str) -> CheckReport:
    """Run a named check; ``property:method`` selects a method or variant."""
    name, _, method = prop.partition(":")
    if name == "flag-transitive":
        return check_flag_transitive(system, method or "product")  # type: ignore[arg-type]
    if name == "residually-connected":
        return check_residually_connected(system, method or "RC1")  # type: ignore[arg-type]
    if name in ("firm", "thin"):
        firm, thin = check_firm_thin(system)
        return firm if name == "firm" else thin
    if name == "product-of-intersections":
        return check_product_of_intersections(system)
    raise InputError(f"Unknown check {prop!r}")


def _system_summary(system: CosetSystem) -> dict[str, Any]:
    return {
        "types": [to_jsonable(t) for t in system.types],
        "order": system.group.order(),
        "parabolic_orders": [system.parabolics[t].order() for t in system.types],
    }


# --- Running ---


@dataclass
class PipelineResult:
    report: dict[str, Any]
    exit_code: int


def _record(name: str, status: StepStatus, witness: Any, ms: float, **extra: Any) -> dict[str, Any]:
    entry = {"name": name, "status": status, "witness": to_jsonable(witness), "ms": round(ms, 3)}
    entry.update({k: to_jsonable(v) for k, v in extra.items() if v})
    return entry


def _bind(ctx: RunContext, outcome: StepOutcome, bind: str | None) -> None:
    if bind is None or outcome.kind is None:
        return
    table = {
        "system": ctx.systems,
        "geometry": ctx.geometries,
        "generators": ctx.generator_systems,
    }[outcome.kind]
    table[bind] = outcome.value


def _run_step(ctx: RunContext, op_name: str, raw_args: dict[str, Any]) -> StepOutcome:
    operation = OPERATIONS.get(op_name)
    if operation is None:
        raise UnresolvedReference("operation", op_name)
    try:
        args = operation.args_model.model_validate(raw_args)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"{op_name}.{where}: {first['msg']}", 1, 1) from exc
    return operation.run(ctx, args)


def _exception_witness(exc: GeoforgeError) -> Any:
    if isinstance(exc, UnresolvedReference):
        return {"kind": exc.kind, "name": exc.name}
    for attr in ("witness", "labels", "orbit", "cap"):
        if hasattr(exc, attr):
            return {attr: getattr(exc, attr)}
    return None


def run_pipeline(
    spec: PipelineSpec | str | Path,
    *,
    caps: Caps | None = None,
    overrides: dict[str, int | None] | None = None,
    base_dir: Path | None = None,
) -> PipelineResult:
    """Execute a pipeline and return its report with the exit code.

    Caps layer as: active caps (or ``caps``), then the pipeline's ``caps``
    block, then ``overrides`` (CLI flags). Steps run in order; a step that
    raises ends the run with an ``error`` entry and the error's exit code.
    Failures while building the definitions are reported the same way.

    Raises:
        ParseError: When the pipeline file does not parse.
        UnresolvedReference: When the pipeline file names undefined groups
            or actions.
    """
    if not isinstance(spec, PipelineSpec):
        path = Path(spec)
        base_dir = base_dir or path.parent
        spec = load_pipeline_spec(path)
    effective = (caps or current_caps()).merged(dict(spec.caps)).merged(overrides or {})
    steps: list[dict[str, Any]] = []
    exit_code = 0

    with use_caps(effective):
        ctx = RunContext(spec=spec, caps=effective, base_dir=base_dir or Path.cwd())
        with timed() as watch:
            try:
                build_definitions(ctx)
            except GeoforgeError as exc:
                logger.warning("Definitions failed: %s", exc)
                steps.append(
                    _record("definitions", "error", _exception_witness(exc), watch.stop(), error=str(exc))
                )
                return PipelineResult({"schema": REPORT_SCHEMA, "steps": steps}, exc.exit_code)
        planned = [(s.label, s.op, s.args, s.bind) for s in spec.pipeline]
        planned.extend(
            (f"check:{system}:{prop}", "check", {"system": system, "property": prop}, None)
            for system, props in spec.checks.items()
            for prop in props
        )
        for label, op_name, raw_args, bind in planned:
            with timed() as watch:
                try:
                    outcome = _run_step(ctx, op_name, raw_args)
                except GeoforgeError as exc:
                    logger.warning("Step %s failed: %s", label, exc)
                    steps.append(
                        _record(label, "error", _exception_witness(exc), watch.stop(), error=str(exc))
                    )
                    exit_code = exc.exit_code
                    break
            _bind(ctx, outcome, bind)
            if outcome.report is not None:
                status: StepStatus = "pass" if outcome.report.passed else "fail"
                if status == "fail":
                    exit_code = exit_code or 1
                steps.append(
                    _record(label, status, outcome.report.witness, outcome.report.elapsed_ms)
                )
            else:
                steps.append(_record(label, "ok", None, watch.elapsed_ms, details=outcome.details))

    return PipelineResult({"schema": REPORT_SCHEMA, "steps": steps}, exit_code)
