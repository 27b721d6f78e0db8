from __future__ import annotations

import pytest

from geoforge import catalog
from geoforge.cgroups import builtin_family, cgroup_system
from geoforge.common.errors import (
    ActionNotValidated,
    DegreeMismatch,
    NotAdmissible,
    NotAHomomorphism,
    NotParabolicPermuting,
    NotSelfDual,
    RepNotValid,
    TypeLabelCollision,
    UnresolvedReference,
)
from geoforge.cosetgeom import CosetSystem, check_flag_transitive, check_residually_connected
from geoforge.groupcore import PermGroup, Subgroup, parse_permutation
from geoforge.ops import (
    ConjugationAction,
    ImagesAction,
    TrivialAction,
    check_admissible,
    direct_power,
    direct_product,
    orbit_identity_violations,
    orbit_table,
    product_formula_parabolic,
    realize_wreath,
    representative_choices,
    self_dual_choices,
    self_dual_twist,
    semidirect,
    twist,
    twist_formula_parabolic,
    validate_action,
    wreath_formula_parabolic,
)
from geoforge.ops.twisting import twist_provenance


def _tau_setup():
    alpha = cgroup_system(catalog.tetrahedron())
    acting = PermGroup.from_cycles({"tau": "(1,4)(2,3)"}, 4)
    beta = CosetSystem(acting, {"tau": Subgroup.trivial(acting)})
    return alpha, beta, ConjugationAction(alpha.parent, acting)


# --- Actions and semidirect products ---


def test_conjugation_requires_normalizing_actor():
    target = PermGroup.from_cycles({"x": "(1,2)"}, 3)
    actor = PermGroup.from_cycles({"y": "(2,3)"}, 3)
    with pytest.raises(ActionNotValidated):
        ConjugationAction(target, actor)
    with pytest.raises(DegreeMismatch):
        ConjugationAction(target, PermGroup.from_cycles({"y": "(1,2)"}, 4))


def test_images_action_inverting_c3():
    c3 = PermGroup.from_cycles({"c": "(1,2,3)"}, 3)
    c2 = PermGroup.from_cycles({"t": "(1,2)"}, 2)
    action = ImagesAction(c3, c2, {"t": {"c": parse_permutation("(1,3,2)", 3)}})
    with pytest.raises(ActionNotValidated):
        semidirect(c3, c2, action)
    group = semidirect(c3, c2, action.validate())
    assert group.order() == 6
    c, t = group.generators["A.c"], group.generators["B.t"]
    assert group.multiply(c, t) != group.multiply(t, c)


def test_images_action_screen_rejects_order_change():
    c3 = PermGroup.from_cycles({"c": "(1,2,3)"}, 3)
    c2 = PermGroup.from_cycles({"t": "(1,2)"}, 2)
    action = ImagesAction(c3, c2, {"t": {"c": parse_permutation("e", 3)}})
    with pytest.raises(NotAHomomorphism):
        action.validate()


def test_images_action_needs_every_acting_generator():
    c3 = PermGroup.from_cycles({"c": "(1,2,3)"}, 3)
    c2 = PermGroup.from_cycles({"t": "(1,2)"}, 2)
    with pytest.raises(UnresolvedReference):
        ImagesAction(c3, c2, {"u": {"c": parse_permutation("e", 3)}})
    with pytest.raises(UnresolvedReference):
        ImagesAction(c3, c2, {})


def test_trivial_action_gives_direct_product_order():
    c3 = PermGroup.from_cycles({"c": "(1,2,3)"}, 3)
    c2 = PermGroup.from_cycles({"t": "(1,2)"}, 2)
    group = semidirect(c3, c2, TrivialAction(c3, c2))
    c, t = group.generators["A.c"], group.generators["B.t"]
    assert group.order() == 6
    assert group.multiply(c, t) == group.multiply(t, c)


def test_type_action_orbits():
    alpha, _, action = _tau_setup()
    type_action = validate_action(action, alpha)
    assert type_action.orbits == ((0, 2), (1,))
    assert type_action.orbit_of(2) == (0, 2)


def test_action_must_permute_parabolics(tetrahedron_system):
    swap = PermGroup.from_cycles({"s": "(1,2)"}, 4)
    action = ConjugationAction(tetrahedron_system.parent, swap)
    with pytest.raises(NotParabolicPermuting):
        validate_action(action, tetrahedron_system)


# --- Products ---


def test_direct_product_of_segments():
    sys = direct_product(catalog.segment(), catalog.segment("b").relabeled({0: 1}))
    assert sys.types == (0, 1)
    assert sys.group.order() == 4
    for J in sys.subsets():
        assert sys.parabolic(J).same_as(product_formula_parabolic(sys, J))


def test_direct_product_type_collision():
    with pytest.raises(TypeLabelCollision):
        direct_product(catalog.segment(), catalog.segment("b"))


def test_direct_power_types():
    sys = direct_power(catalog.segment(), [1, 2, 3])
    assert sys.types == ((0, 1), (0, 2), (0, 3))
    assert sys.group.order() == 8
    assert check_flag_transitive(sys).passed


# --- Twisting ---


def test_tetrahedron_twist_parabolics(cube_system):
    assert cube_system.types == ((0, 2), (1,), "tau")
    assert cube_system.group.order() == 48
    assert [cube_system.parabolics[t].order() for t in cube_system.types] == [4, 8, 6]
    assert [cube_system.index(t) for t in cube_system.types] == [12, 6, 8]


def test_twist_formula_matches_every_parabolic(cube_system):
    for J in cube_system.subsets():
        assert cube_system.parabolic(J).same_as(twist_formula_parabolic(cube_system, J))


def test_every_representative_is_admissible_for_tau():
    alpha, beta, action = _tau_setup()
    result = check_admissible(alpha, beta, action)
    assert result.admissible
    assert result.valid == {(0, 2): (0, 2), (1,): (1,)}
    assert len(representative_choices(alpha, beta, action)) == 2


def test_twist_rejects_bad_representatives():
    alpha, beta, action = _tau_setup()
    with pytest.raises(RepNotValid):
        twist(alpha, beta, action, {(0, 2): 1, (1,): 1})
    with pytest.raises(NotAdmissible):
        twist(alpha, beta, action, {(0, 2): 0})


def test_orbit_tables_of_seven_type_orbits():
    alpha, beta, action = catalog.sym3_on_seven_types()
    result = check_admissible(alpha, beta, action)
    assert result.type_action.orbits == ((0,), (1, 3, 5), (2, 4, 6))
    table = result.tables[(1, 3, 5)][1]
    assert table.lower_of([]) == frozenset({1})
    assert table.lower_of([7, 8]) == frozenset({1, 3, 5})
    assert table.ipo_violation() is None


def test_orbit_identities_hold_after_twisting(cube_system):
    data = twist_provenance(cube_system).orbit_data
    assert orbit_identity_violations(data) == []


def test_twisted_cube_passes_checks(cube_system):
    assert check_flag_transitive(cube_system).passed
    assert check_residually_connected(cube_system).passed


# --- Wreath products ---


def test_wreath_types_and_order():
    sys = catalog.wreath_family(3)
    assert sys.types == (((0, 1), (0, 2), (0, 3)), 1, 2)
    assert sys.group.order() == 48
    for t in sys.types:
        assert sys.parabolics[t].same_as(wreath_formula_parabolic(sys, t))


def test_realized_wreath_is_the_first_toggle_family():
    realized = realize_wreath(catalog.wreath_family(3))
    family = cgroup_system(builtin_family("T5-13", 3))
    assert realized.types == (0, 1, 2)
    for t in realized.types:
        assert realized.parabolics[t].same_as(family.parabolics[t])


# --- Self-dual twists ---


def test_square_twists_to_octagon():
    result = self_dual_twist(catalog.square())
    assert result.rank == 2
    assert result.system.group.order() == 16
    assert result.diagram.path_labels() == (8,)
    assert result.generators.labels == ("r0", "tau")


def test_simplex_self_dual_choices_include_a_linear_diagram():
    choices = self_dual_choices(catalog.simplex4())
    assert choices
    assert all(c.rank == 3 and c.system.group.order() == 240 for c in choices)
    assert any(c.linear for c in choices)


def test_non_self_dual_generators():
    with pytest.raises(NotSelfDual):
        self_dual_twist(builtin_family("T5-13", 3))


def test_orbit_table_under_the_duality():
    alpha, beta, action = _tau_setup()
    type_action = validate_action(action, alpha)
    table = orbit_table(type_action, beta, (0, 2), 0)
    assert table.lower_of([]) == frozenset({0})
    assert table.lower_of(["tau"]) == frozenset({0, 2})
    assert table.upper_of(["tau"]) == frozenset({0})
    with pytest.raises(RepNotValid):
        orbit_table(type_action, beta, (0, 2), 1)
