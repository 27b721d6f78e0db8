"""Regression suite over the worked examples.

Each criterion is a function that records expectations and returns them;
the runner turns geoforge errors into ``error`` or ``cap-exceeded`` entries so
one broken criterion never hides the others.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, Literal

from geoforge import catalog
from geoforge.cgroups.families import builtin_family
from geoforge.cgroups.generators import (
    cgroup_system,
    check_intersection_property,
    check_string_property,
    coxeter_diagram,
    halve,
)
from geoforge.cgroups.search import search_rank3_polytope
from geoforge.common.config import Settings, load_settings, use_caps
from geoforge.common.errors import CapExceeded, GeoforgeError, RankGuardExceeded
from geoforge.common.reports import timed, to_jsonable
from geoforge.cosetgeom.checks import (
    check_firm_thin,
    check_flag_transitive,
    check_product_of_intersections,
    check_residually_connected,
)
from geoforge.groupcore.groups import PermGroup
from geoforge.groupcore.permutation import Permutation
from geoforge.groupcore.subgroups import Subgroup, intersect
from geoforge.materialize.geometry import chambers, join, materialize
from geoforge.materialize.isomorphism import colored_isomorphic
from geoforge.materialize.references import cube_reference
from geoforge.ops.actions import validate_action
from geoforge.ops.products import direct_product
from geoforge.ops.selfdual import self_dual_choices, self_dual_twist
from geoforge.ops.twisting import (
    OrbitData,
    check_admissible,
    orbit_identity_violations,
    orbit_table,
    twist_formula_parabolic,
)
from geoforge.ops.wreath import realize_wreath, wreath_formula_parabolic
from geoforge.streetlight import (
    IDENTITY,
    TOGGLE,
    LampConfig,
    LamplighterElement,
    State,
    Uncertain,
    incident,
    ll_inv,
    ll_mul,
    ll_pow,
    street_distance_bfs,
    street_path,
)

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 1

CriterionStatus = Literal["pass", "fail", "cap-exceeded", "error"]


class Expectations:
    """Collects observed values and the ones that missed their target."""

    def __init__(self) -> None:
        self.details: dict[str, Any] = {}
        self.mismatches: list[dict[str, Any]] = []

    def equal(self, key: str, actual: Any, expected: Any) -> None:
        self.details[key] = actual
        if actual != expected:
            self.mismatches.append({"key": key, "actual": actual, "expected": expected})

    def true(self, key: str, value: bool) -> None:
        self.equal(key, bool(value), True)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict[str, Any]:
        data = dict(self.details)
        if self.mismatches:
            data["mismatches"] = self.mismatches
        return data


@dataclass(frozen=True)
class Criterion:
    id: int
    name: str
    run: Callable[[Settings, Expectations], None]


CRITERIA: list[Criterion] = []


CriterionFunc = Callable[[Settings, Expectations], None]


def criterion(cid: int, name: str) -> Callable[[CriterionFunc], CriterionFunc]:
    def decorator(func: CriterionFunc) -> CriterionFunc:
        CRITERIA.append(Criterion(cid, name, func))
        return func

    return decorator


# --- Criteria ---


@criterion(1, "tetrahedron twist is the cube")
def _tetrahedron_twist(settings: Settings, expect: Expectations) -> None:
    sys = catalog.tetrahedron_twist()
    expect.equal("types", [to_jsonable(t) for t in sys.types], [[0, 2], [1], "tau"])
    expect.equal("parabolic_orders", [sys.parabolics[t].order() for t in sys.types], [4, 8, 6])
    geo = materialize(sys)
    counts = geo.count_by_type()
    expect.equal("counts", [counts[t] for t in sys.types], [12, 6, 8])
    expect.equal("chambers", len(chambers(geo)), 48)
    expect.true("flag_transitive", check_flag_transitive(sys).passed)
    expect.true("residually_connected", check_residually_connected(sys).passed)
    expect.true("thin", check_firm_thin(sys)[1].passed)
    expect.true("cube", colored_isomorphic(geo, cube_reference()) is not None)


@criterion(2, "orbit tables of Sym(3) on seven types")
def _seven_type_orbits(settings: Settings, expect: Expectations) -> None:
    alpha, beta, action = catalog.sym3_on_seven_types()
    type_action = validate_action(action, alpha)
    expect.equal("orbits", [list(L) for L in type_action.orbits], [[0], [1, 3, 5], [2, 4, 6]])
    table = orbit_table(type_action, beta, (1, 3, 5), 1)
    for M, expected in (((), [1]), ((8,), [1]), ((7,), [1, 3]), ((7, 8), [1, 3, 5])):
        expect.equal(f"lower{list(M)}", sorted(table.lower[frozenset(M)]), expected)

    admissibility = check_admissible(alpha, beta, action)
    for reps in ((0, 1, 2), (0, 1, 6)):
        chosen = dict(zip(type_action.orbits, reps, strict=True))
        valid = all(F in admissibility.valid[L] for L, F in chosen.items())
        expect.true(f"ipo{list(reps)}", valid)
        if valid:
            data = OrbitData(
                type_action, beta, {L: admissibility.tables[L][F] for L, F in chosen.items()}
            )
            expect.equal(f"identities{list(reps)}", orbit_identity_violations(data), [])


@criterion(3, "string C-group families")
def _families(settings: Settings, expect: Expectations) -> None:
    for family, r in itertools.product(("T9-1", "T9-2"), (3, 4, 5)):
        S = builtin_family(family, r)
        key = f"{family}(r={r})"
        expect.equal(f"{key}.order", S.order(), 2 * math.factorial(r))
        expect.true(f"{key}.string", check_string_property(S).passed)
        expect.true(f"{key}.intersection", check_intersection_property(S, "full").passed)

    for r in (3, 4, 5):
        S = builtin_family("T5-13", r)
        key = f"T5-13(r={r})"
        expect.equal(f"{key}.order", S.order(), 2**r * math.factorial(r))
        expect.true(f"{key}.string", check_string_property(S).passed)
        expect.true(f"{key}.intersection", check_intersection_property(S, "full").passed)
        family_sys = cgroup_system(S)
        realized = realize_wreath(catalog.wreath_family(r))
        expect.true(
            f"{key}.wreath_parabolics",
            all(
                set(realized.parabolics[t].elements()) == set(family_sys.parabolics[t].elements())
                for t in family_sys.types
            ),
        )

    S4 = builtin_family("T5-14", 4)
    expect.equal("T5-14(r=4).order", S4.order(), 2**4 * math.factorial(4))
    expect.true("T5-14(r=4).intersection", check_intersection_property(S4, "full").passed)

    S3 = builtin_family("T5-14", 3)
    expect.equal("T5-14(r=3).order", S3.order(), 24)
    expect.true("T5-14(r=3).reduced2E16", check_intersection_property(S3, "reduced2E16").passed)
    meet = intersect(S3.subgroup([1, 2]), S3.subgroup([0, 1]))
    expect.true("T5-14(r=3).G0_meet_G2", meet.same_as(S3.subgroup([1])))


@criterion(4, "checker equivalence")
def _checker_equivalence(settings: Settings, expect: Expectations) -> None:
    ft_failing = catalog.ft_failures()
    systems = catalog.fixture_systems()
    expect.true("fixture_count", len(systems) >= 20)
    ft_disagreements: list[str] = []
    rc_disagreements: list[str] = []
    identity_misses: list[str] = []
    for name, factory in systems.items():
        sys = factory()
        ft = {m: check_flag_transitive(sys, m).passed for m in ("product", "triple", "geometry")}
        if len(set(ft.values())) != 1:
            ft_disagreements.append(name)
        if ft["product"]:
            rc = {v: check_residually_connected(sys, v).passed for v in ("RC1", "RC2", "intersection")}
            if len(set(rc.values())) != 1:
                rc_disagreements.append(name)
        identity = check_product_of_intersections(sys).passed
        if identity == (name in ft_failing):
            identity_misses.append(name)
    expect.equal("flag_transitive_disagreements", ft_disagreements, [])
    expect.equal("residually_connected_disagreements", rc_disagreements, [])
    expect.equal("product_of_intersections_misses", identity_misses, [])


@criterion(5, "twisted parabolic oracle")
def _parabolic_oracle(settings: Settings, expect: Expectations) -> None:
    cases = [("tetrahedron-twist", catalog.tetrahedron_twist())]
    cases.extend((f"wreath(r={r})", catalog.wreath_family(r)) for r in (3, 4))
    for name, sys in cases:
        misses = [
            list(J)
            for J in sys.subsets()
            if not sys.parabolic(J).same_as(twist_formula_parabolic(sys, J))
        ]
        expect.equal(f"{name}.formula_misses", to_jsonable(misses), [])
    for name, sys in cases[1:]:
        misses = [t for t in sys.types if not sys.parabolics[t].same_as(wreath_formula_parabolic(sys, t))]
        expect.equal(f"{name}.wreath_formula_misses", to_jsonable(misses), [])


@criterion(6, "M22 verification")
def _m22(settings: Settings, expect: Expectations) -> None:
    S = catalog.m22()
    expect.equal("order", S.order(), 887040)
    expect.equal("product_orders", [S.product_order(0, 1), S.product_order(1, 2)], [4, 12])
    expect.true("intersection", check_intersection_property(S, "full").passed)
    halved = halve(S, 2, 1)
    expect.equal("halved_order", halved.order, 887040)
    expect.true("halved_non_linear", not coxeter_diagram(halved.system).linear)


@criterion(7, "self-dual twist of the 4-simplex")
def _self_dual(settings: Settings, expect: Expectations) -> None:
    result = self_dual_twist(catalog.simplex4())
    sys = result.system
    expect.equal("rank", result.rank, 3)
    expect.equal("order", sys.group.order(), 240)
    expect.true("flag_transitive", check_flag_transitive(sys).passed)
    expect.true("residually_connected", check_residually_connected(sys).passed)
    expect.true("thin", check_firm_thin(sys)[1].passed)
    choices = self_dual_choices(catalog.simplex4())
    expect.details["diagrams"] = [c.diagram.path_labels() for c in choices]
    expect.true("linear_choice", any(c.linear for c in choices))


@criterion(8, "join of direct products")
def _join(settings: Settings, expect: Expectations) -> None:
    for k, (alpha, beta) in enumerate(catalog.join_pairs()):
        product = materialize(direct_product(alpha, beta))
        joined = join([materialize(alpha), materialize(beta)])
        expect.true(f"pair{k}", colored_isomorphic(product, joined) is not None)


def _toggle_at(position: int) -> LamplighterElement:
    return LamplighterElement(LampConfig.of([position]), 0)


@criterion(9, "streetlight street")
def _street(settings: Settings, expect: Expectations) -> None:
    rng = random.Random(settings.seed)
    window = range(-3, 4)
    configs = [LampConfig.of(c) for k in range(len(window) + 1) for c in itertools.combinations(window, k)]
    bad_degree = 0
    for _ in range(settings.sample_size):
        position = rng.choice(window)
        known = LampConfig.of(p for p in window if p != position and rng.random() < 0.5)
        u = Uncertain(known, position)
        if sum(1 for c in configs if incident(State(c), u)) != 2:
            bad_degree += 1
    expect.equal("uncertain_degree_failures", bad_degree, 0)

    bad_paths: list[list[int]] = []
    positions = range(-3, 6)
    for k in range(5):
        for F in itertools.combinations(positions, k):
            start, end = State(LampConfig()), State(LampConfig.of(F))
            length = len(street_path(start, end))
            if length != 2 * k or street_distance_bfs(start, end) != length:
                bad_paths.append(list(F))
    expect.equal("path_failures", bad_paths, [])

    bad_relators = 0
    for _ in range(settings.sample_size):
        g = LamplighterElement(
            LampConfig.of(p for p in range(-4, 5) if rng.random() < 0.5), rng.randint(-4, 4)
        )
        conj = ll_mul(ll_mul(g, TOGGLE), ll_inv(g))
        if ll_pow(conj, 2) != IDENTITY:
            bad_relators += 1
        i, j = rng.sample(range(-6, 7), 2)
        x, y = _toggle_at(i), _toggle_at(j)
        if ll_mul(x, y) != ll_mul(y, x):
            bad_relators += 1
    expect.equal("relator_failures", bad_relators, 0)


@criterion(10, "rank-3 polytope search")
def _search(settings: Settings, expect: Expectations) -> None:
    for n in (5, 6):
        G = PermGroup.symmetric(n)
        S = search_rank3_polytope(G, Permutation.from_cycles([(1, 2)], n))
        key = f"Sym({n})"
        expect.details[f"{key}.generators"] = [str(g) for g in S.generators]
        expect.details[f"{key}.type"] = [S.product_order(0, 1), S.product_order(1, 2)]
        expect.true(f"{key}.generates", Subgroup(G, list(S.generators)).order() == G.order())
        expect.true(f"{key}.string", check_string_property(S).passed)
        expect.true(f"{key}.intersection", check_intersection_property(S, "full").passed)


# --- Runner ---


@dataclass
class SuiteResult:
    report: dict[str, Any]
    exit_code: int
    entries: list[dict[str, Any]] = field(default_factory=list)


def _selected(name_filter: str | None) -> list[Criterion]:
    if not name_filter:
        return list(CRITERIA)
    if name_filter.isdigit():
        return [c for c in CRITERIA if c.id == int(name_filter)]
    needle = name_filter.lower()
    return [c for c in CRITERIA if needle in c.name.lower()]


def run_criterion(item: Criterion, settings: Settings) -> dict[str, Any]:
    expect = Expectations()
    status: CriterionStatus
    with timed() as watch:
        try:
            item.run(settings, expect)
            status = "pass" if expect.passed else "fail"
        except (CapExceeded, RankGuardExceeded) as exc:
            status = "cap-exceeded"
            expect.details["error"] = str(exc)
        except GeoforgeError as exc:
            logger.exception("Criterion %d (%s) raised", item.id, item.name)
            status = "error"
            expect.details["error"] = f"{type(exc).__name__}: {exc}"
    logger.info("Criterion %d (%s): %s in %.1f ms", item.id, item.name, status, watch.elapsed_ms)
    return {
        "id": item.id,
        "name": item.name,
        "status": status,
        "details": to_jsonable(expect.to_json()),
        "ms": round(watch.elapsed_ms, 3),
    }


def run_suite(
    name_filter: str | None = None,
    *,
    settings: Settings | None = None,
    overrides: dict[str, int | None] | None = None,
) -> SuiteResult:
    """Run the selected criteria and aggregate their entries.

    Exit code 3 when any criterion hit a cap, else 1 when any failed or
    raised, else 0.
    """
    settings = settings or load_settings()
    entries: list[dict[str, Any]] = []
    with timed() as watch, use_caps(settings.caps.merged(overrides or {})):
        for item in sorted(_selected(name_filter), key=lambda c: c.id):
            entries.append(run_criterion(item, settings))
    statuses = {e["status"] for e in entries}
    if "cap-exceeded" in statuses:
        exit_code = 3
    elif statuses - {"pass"}:
        exit_code = 1
    else:
        exit_code = 0
    report = {"schema": REPORT_SCHEMA, "criteria": entries, "total_ms": round(watch.stop(), 3)}
    return SuiteResult(report, exit_code, entries)


paper_suite = run_suite
