"""Materialized geometries: the brute-force oracle for the algebraic checkers."""

from geoforge.materialize.export import export, format_type, import_json
from geoforge.materialize.geometry import (
    Geometry,
    GeometryElement,
    base_flag_residue,
    chamber_orbits,
    chambers,
    check_geometry_direct,
    find_unextendable_flag,
    join,
    materialize,
)
from geoforge.materialize.isomorphism import colored_isomorphic
from geoforge.materialize.references import cube_reference

__all__ = [
    "Geometry",
    "GeometryElement",
    "base_flag_residue",
    "chamber_orbits",
    "chambers",
    "check_geometry_direct",
    "colored_isomorphic",
    "cube_reference",
    "export",
    "find_unextendable_flag",
    "format_type",
    "import_json",
    "join",
    "materialize",
]
