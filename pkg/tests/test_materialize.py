from __future__ import annotations

import json

import pytest

from geoforge import catalog
from geoforge.common.config import use_caps
from geoforge.common.errors import CapExceeded, ParseError, TypeLabelCollision
from geoforge.materialize import (
    Geometry,
    base_flag_residue,
    chamber_orbits,
    chambers,
    check_geometry_direct,
    colored_isomorphic,
    cube_reference,
    export,
    find_unextendable_flag,
    format_type,
    import_json,
    join,
    materialize,
)
from geoforge.ops import direct_product


def test_tetrahedron_geometry(tetrahedron_system):
    geo = materialize(tetrahedron_system)
    assert geo.count_by_type() == {0: 4, 1: 6, 2: 4}
    assert len(chambers(geo)) == 24
    assert chamber_orbits(geo, tetrahedron_system) == 1
    report = check_geometry_direct(geo)
    assert report.is_geometry and report.connected and report.residually_connected
    assert report.firm and report.thin
    assert report.chamber_count == 24


def test_vertex_residue_is_a_triangle(tetrahedron_system):
    geo = materialize(tetrahedron_system)
    residue = base_flag_residue(geo, tetrahedron_system, [0])
    assert residue.types == (1, 2)
    assert residue.count_by_type() == {1: 3, 2: 3}
    assert len(residue.incidence_pairs()) == 6


def test_twisted_tetrahedron_is_the_cube(cube_system):
    geo = materialize(cube_system)
    assert list(geo.count_by_type().values()) == [12, 6, 8]
    assert len(chambers(geo)) == 48
    assert colored_isomorphic(geo, cube_reference()) is not None


def test_cube_reference():
    cube = cube_reference()
    assert cube.count_by_type() == {0: 8, 1: 12, 2: 6}
    report = check_geometry_direct(cube)
    assert report.thin and report.residually_connected
    assert report.chamber_count == 48


def test_isomorphism_respects_a_given_type_bijection(cube_system):
    geo = materialize(cube_system)
    cube = cube_reference()
    right = {(0, 2): 1, (1,): 2, "tau": 0}
    wrong = {(0, 2): 0, (1,): 2, "tau": 1}
    assert colored_isomorphic(geo, cube, right) is not None
    assert colored_isomorphic(geo, cube, wrong) is None


def test_different_geometries_are_not_isomorphic(tetrahedron_system):
    assert colored_isomorphic(materialize(tetrahedron_system), cube_reference()) is None


def test_klein_triangle_has_two_chamber_orbits():
    sys = catalog.ft_failures()["klein-triangle"]()
    geo = materialize(sys)
    assert find_unextendable_flag(geo) is None
    assert len(chambers(geo)) == 8
    assert chamber_orbits(geo, sys) == 2


def test_materialize_cap(tetrahedron_system):
    with use_caps(geometry=5), pytest.raises(CapExceeded) as info:
        materialize(tetrahedron_system)
    assert info.value.partial == 14


def test_isomorphism_cap(tetrahedron_system):
    geo = materialize(tetrahedron_system)
    with use_caps(isomorphism=10), pytest.raises(CapExceeded):
        colored_isomorphic(geo, geo)


def test_geometry_rejects_same_type_incidence():
    with pytest.raises(ValueError):
        Geometry.from_incidences([0, 1], [0, 0, 1], [(0, 1)])


# --- Joins ---


def test_join_of_components_matches_direct_product():
    for alpha, beta in catalog.join_pairs():
        product = materialize(direct_product(alpha, beta))
        joined = join([materialize(alpha), materialize(beta)])
        assert colored_isomorphic(product, joined) is not None


def test_join_rejects_shared_types(tetrahedron_system):
    geo = materialize(tetrahedron_system)
    with pytest.raises(TypeLabelCollision):
        join([geo, geo])


# --- Export ---


def test_format_type():
    assert format_type((0, 2)) == "{0,2}"
    assert format_type(((0, 1), (0, 2))) == "{{0,1},{0,2}}"
    assert format_type("tau") == "tau"


def test_json_export_imports_back(cube_system):
    geo = materialize(cube_system)
    text = export(geo, "json")
    document = json.loads(text)
    assert document["types"] == ["{0,2}", "{1}", "tau"]
    imported = import_json(text, name="cube")
    assert imported.types == ("{0,2}", "{1}", "tau")
    assert colored_isomorphic(imported, geo) is not None


def test_dot_export(tetrahedron_system):
    text = export(materialize(tetrahedron_system), "dot")
    assert text.startswith('graph "tetrahedron" {')
    assert text.count(" -- ") == 36
    assert text.rstrip().endswith("}")


@pytest.mark.parametrize(
    "text",
    ["{not json", '{"types": [0]}', '{"types": ["0"], "elements": [{"id": 1, "type": "0"}], "incidences": []}'],
)
def test_import_rejects_malformed_documents(text):
    with pytest.raises(ParseError):
        import_json(text)


def test_incidence_graph_carries_types(tetrahedron_system):
    graph = materialize(tetrahedron_system).to_networkx()
    assert graph.number_of_nodes() == 14
    assert graph.number_of_edges() == 36
    assert sorted({data["type"] for _, data in graph.nodes(data=True)}) == [0, 1, 2]
