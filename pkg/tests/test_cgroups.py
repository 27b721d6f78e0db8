from __future__ import annotations

import math

import pytest

from geoforge import catalog
from geoforge.cgroups import (
    FAMILIES,
    FAMILY_ALIASES,
    GeneratorSystem,
    builtin_family,
    cgroup_system,
    check_intersection_property,
    check_string_property,
    coxeter_diagram,
    emit,
    halve,
    involutions,
    parse_permrep_graph,
    permrep_graph_of,
    search_rank3_polytope,
)
from geoforge.common.config import use_caps
from geoforge.common.errors import (
    CapExceeded,
    InputError,
    NotAMatching,
    NotAnInvolution,
    ParseError,
    PointOutOfRange,
    RankTooSmall,
    UnknownFamily,
)
from geoforge.groupcore import PermGroup, Permutation, intersect, parse_permutation


def test_generators_must_be_involutions():
    with pytest.raises(NotAnInvolution) as info:
        GeneratorSystem.from_permutations([parse_permutation("(1,2,3)", 3)])
    assert info.value.label == "r0"


@pytest.mark.parametrize(
    ("family", "r", "order"),
    [
        ("T9-1", 3, 2 * 6),
        ("T9-1", 4, 2 * 24),
        ("T9-2", 3, 2 * 6),
        ("T5-13", 3, 8 * 6),
        ("T5-13", 4, 16 * 24),
        ("T5-14", 3, 24),
        ("T5-14", 4, 384),
    ],
)
def test_family_orders(family, r, order):
    assert builtin_family(family, r).order() == order


def test_family_errors():
    with pytest.raises(UnknownFamily):
        builtin_family("T0-0", 3)
    with pytest.raises(RankTooSmall):
        builtin_family("T9-1", 2)


def test_every_family_id_and_alias_builds():
    assert sorted(FAMILIES) == ["T5-13", "T5-14", "T5-15", "T5-16", "T9-1", "T9-2"]
    for alias, fid in FAMILY_ALIASES.items():
        by_alias, by_id = builtin_family(alias, 3), builtin_family(fid, 3)
        assert by_alias == by_id
        assert by_alias.name == f"{fid}(r=3)"


def test_unknown_intersection_mode():
    with pytest.raises(InputError):
        check_intersection_property(catalog.tetrahedron(), "sideways")  # type: ignore[arg-type]


def test_string_property():
    assert check_string_property(catalog.tetrahedron()).passed
    tangled = GeneratorSystem.from_permutations(
        [parse_permutation(t, 4) for t in ("(1,2)", "(3,4)", "(2,3)")]
    )
    report = check_string_property(tangled)
    assert not report.passed
    assert report.witness == {"i": 0, "j": 2, "order": 3}


@pytest.mark.parametrize("mode", ["full", "reduced2E16", "reduced"])
def test_intersection_property_of_tetrahedron(mode):
    assert check_intersection_property(catalog.tetrahedron(), mode).passed


def test_intersection_property_fails_for_repeated_generator():
    p = parse_permutation("(1,2)", 3)
    assert not check_intersection_property(GeneratorSystem.from_permutations([p, p])).passed


def test_tail_toggles_rank3_meets_in_the_middle_generator():
    S = builtin_family("T5-14", 3)
    assert check_intersection_property(S, "reduced2E16").passed
    meet = intersect(S.subgroup([0, 1]), S.subgroup([1, 2]))
    assert meet.same_as(S.subgroup([1]))


def test_coxeter_diagrams():
    assert coxeter_diagram(catalog.tetrahedron()).path_labels() == (3, 3)
    assert coxeter_diagram(catalog.simplex4()).path_labels() == (3, 3, 3)
    assert coxeter_diagram(catalog.square()).path_labels() == (4,)
    triangle = GeneratorSystem.from_permutations(
        [parse_permutation(t, 3) for t in ("(1,2)", "(2,3)", "(1,3)")]
    )
    diagram = coxeter_diagram(triangle)
    assert not diagram.linear
    assert diagram.path_labels() is None


def test_cgroup_system_parabolics():
    sys = cgroup_system(catalog.simplex4())
    assert sys.rank == 4
    assert [sys.index(t) for t in sys.types] == [5, 10, 10, 5]


# --- Halving ---


def test_halving_twice_restores_when_product_has_order_three():
    S = catalog.tetrahedron()
    once = halve(S, 0, 1)
    assert halve(once.system, 0, 1).system == S


def test_halving_the_square():
    result = halve(catalog.square(), 0, 1)
    assert (result.order, result.index) == (4, 2)
    assert halve(result.system, 0, 1).system != catalog.square()
    with pytest.raises(InputError):
        halve(catalog.square(), 1, 1)


# --- Permutation representation graphs ---


def test_emit_tetrahedron():
    assert emit(catalog.tetrahedron()) == "n=4\n0: 1-2\n1: 2-3\n2: 3-4\n"


def test_permrep_text_reparses():
    S = builtin_family("T5-13", 3)
    assert parse_permrep_graph(emit(S)) == S


@pytest.mark.parametrize(
    ("text", "line"),
    [("", 1), ("m=4\n", 1), ("n=4\n0: 1-2\n2: 3-4\n", 3), ("n=4\n0: 1-2 x\n", 2), ("n=4\n0: 2-2\n", 2)],
)
def test_permrep_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_permrep_graph(text)
    assert info.value.line == line


def test_permrep_rejects_non_matching_edges():
    with pytest.raises(NotAMatching) as info:
        parse_permrep_graph("n=4\n0: 1-2 2-3\n")
    assert (info.value.label, info.value.vertex) == (0, 2)
    with pytest.raises(PointOutOfRange):
        parse_permrep_graph("n=3\n0: 1-5\n")


# --- Search ---


def test_involutions_of_sym4(sym4):
    found = involutions(sym4)
    assert len(found) == 9
    with use_caps(involutions=10), pytest.raises(CapExceeded):
        involutions(sym4)


def test_search_rank3_in_sym5():
    G = PermGroup.symmetric(5)
    t = parse_permutation("(1,2)", 5)
    S = search_rank3_polytope(G, t)
    assert S.labels == ("t", "inv_0", "inv_1")
    assert S[0] == t
    assert S.order() == 120
    assert check_intersection_property(S).passed


def test_search_needs_an_involution():
    G = PermGroup.symmetric(4)
    with pytest.raises(NotAnInvolution):
        search_rank3_polytope(G, Permutation.identity(4))


@pytest.mark.slow
def test_search_rank3_in_sym6():
    G = PermGroup.symmetric(6)
    S = search_rank3_polytope(G, parse_permutation("(1,2)", 6))
    assert S.order() == math.factorial(6)


@pytest.mark.slow
def test_m22_generators():
    S = catalog.m22()
    assert S.order() == 887040
    assert (S.product_order(0, 1), S.product_order(1, 2)) == (4, 12)
    assert check_string_property(S).passed
    assert coxeter_diagram(S).path_labels() == (4, 12)


def test_permrep_graph_of_tetrahedron():
    graph = permrep_graph_of(catalog.tetrahedron())
    assert graph.n == 4
    assert graph.edges == ((1, 2, 0), (2, 3, 1), (3, 4, 2))
    assert graph.labels == (0, 1, 2)
