"""Coset incidence systems and their algebraic checkers."""

from geoforge.cosetgeom.checks import (
    check_firm_thin,
    check_flag_transitive,
    check_product_of_intersections,
    check_residually_connected,
)
from geoforge.cosetgeom.system import (
    CosetSystem,
    borel_index,
    normalize_by_borel,
    parabolic,
    residue_system,
)

__all__ = [
    "CosetSystem",
    "borel_index",
    "check_firm_thin",
    "check_flag_transitive",
    "check_product_of_intersections",
    "check_residually_connected",
    "normalize_by_borel",
    "parabolic",
    "residue_system",
]
