from __future__ import annotations

import pytest

from geoforge import catalog
from geoforge.common.config import use_caps
from geoforge.common.errors import InputError, MixedGroupOperands, NotNormal, RankGuardExceeded
from geoforge.cosetgeom import (
    CosetSystem,
    borel_index,
    check_firm_thin,
    check_flag_transitive,
    check_product_of_intersections,
    check_residually_connected,
    normalize_by_borel,
    residue_system,
)
from geoforge.groupcore import PermGroup, Subgroup, parse_permutation


def test_tetrahedron_parabolics(tetrahedron_system):
    assert tetrahedron_system.types == (0, 1, 2)
    assert [tetrahedron_system.index(t) for t in tetrahedron_system.types] == [4, 6, 4]
    assert tetrahedron_system.borel().order() == 1
    assert borel_index(tetrahedron_system) == 24
    assert tetrahedron_system.parabolic([0, 2]).order() == 2
    assert tetrahedron_system.parabolic([]).order() == 24


def test_subsets_are_ordered_by_size_then_position(tetrahedron_system):
    assert list(tetrahedron_system.subsets(max_size=1)) == [(), (0,), (1,), (2,)]


def test_unknown_type_is_a_key_error(tetrahedron_system):
    with pytest.raises(KeyError):
        tetrahedron_system.parabolic([7])


@pytest.mark.parametrize("method", ["product", "triple", "geometry"])
def test_tetrahedron_is_flag_transitive(tetrahedron_system, method):
    assert check_flag_transitive(tetrahedron_system, method).passed


@pytest.mark.parametrize("variant", ["RC1", "RC2", "intersection"])
def test_tetrahedron_is_residually_connected(tetrahedron_system, variant):
    assert check_residually_connected(tetrahedron_system, variant).passed


def test_tetrahedron_is_firm_and_thin(tetrahedron_system):
    firm, thin = check_firm_thin(tetrahedron_system)
    assert firm.passed and thin.passed
    assert not thin.conditional
    assert thin.details["indices"] == {0: 2, 1: 2, 2: 2}


def test_klein_triangle_fails_flag_transitivity():
    sys = catalog.ft_failures()["klein-triangle"]()
    report = check_flag_transitive(sys)
    assert not report.passed
    assert set(report.witness) == {"J", "i", "g"}
    assert not check_product_of_intersections(sys).passed
    _, thin = check_firm_thin(sys)
    assert thin.conditional


@pytest.mark.parametrize("name", sorted(catalog.ft_failures()))
def test_flag_methods_agree_on_failures(name):
    sys = catalog.ft_failures()[name]()
    verdicts = {m: check_flag_transitive(sys, m).passed for m in ("product", "triple", "geometry")}
    assert set(verdicts.values()) == {False}


@pytest.mark.parametrize("name", sorted(catalog.rc_failures()))
def test_rc_failures_are_flag_transitive(name):
    sys = catalog.rc_failures()[name]()
    assert check_flag_transitive(sys).passed
    for variant in ("RC1", "RC2", "intersection"):
        assert not check_residually_connected(sys, variant).passed


@pytest.mark.parametrize("name", sorted(catalog.passing_systems()))
def test_passing_systems(name):
    sys = catalog.passing_systems()[name]()
    assert check_flag_transitive(sys, "product").passed
    assert check_flag_transitive(sys, "triple").passed
    assert check_residually_connected(sys, "RC1").passed
    assert check_residually_connected(sys, "RC2").passed
    assert check_product_of_intersections(sys).passed


def test_residue_of_a_vertex(tetrahedron_system):
    residue = residue_system(tetrahedron_system, [0])
    assert residue.types == (1, 2)
    assert residue.group.order() == 6
    assert [residue.index(t) for t in residue.types] == [3, 3]
    assert residue_system(tetrahedron_system, []) is tetrahedron_system
    with pytest.raises(InputError):
        residue_system(tetrahedron_system, [0, 1, 2])


def test_normalize_by_normal_borel():
    group = PermGroup.from_cycles({"x": "(1,2)", "y": "(3,4)"}, 4)
    sys = CosetSystem(group, {0: Subgroup(group, [parse_permutation("(3,4)", 4)])})
    quotient = normalize_by_borel(sys)
    assert quotient.group.order() == 2
    assert quotient.parabolics[0].order() == 1


def test_normalize_rejects_non_normal_borel():
    group = PermGroup.symmetric(3)
    sys = CosetSystem(group, {0: Subgroup(group, [group.generators["s1"]])})
    with pytest.raises(NotNormal):
        normalize_by_borel(sys)


def test_normalize_is_identity_for_trivial_borel(tetrahedron_system):
    assert normalize_by_borel(tetrahedron_system) is tetrahedron_system


def test_rank_guard():
    with use_caps(rank_guard=2), pytest.raises(RankGuardExceeded):
        catalog.passing_systems()["tetrahedron"]()


def test_foreign_parabolic_is_rejected(sym4):
    other = PermGroup.symmetric(4)
    with pytest.raises(MixedGroupOperands):
        CosetSystem(sym4, {0: Subgroup(other, [other.generators["s1"]])})


def test_minimal_parabolics(tetrahedron_system):
    orders = [tetrahedron_system.minimal_parabolic(t).order() for t in tetrahedron_system.types]
    assert orders == [2, 2, 2]
    assert tetrahedron_system.minimal_parabolic(0).same_as(tetrahedron_system.parabolic([1, 2]))
