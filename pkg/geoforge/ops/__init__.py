"""Constructions on coset systems: products, twisting, wreath products, self-dual twists."""

from geoforge.ops.actions import (
    ActionSpec,
    ConjugationAction,
    CoordinateAction,
    ImagesAction,
    TrivialAction,
    TypeAction,
    validate_action,
)
from geoforge.ops.products import (
    direct_power,
    direct_product,
    product_formula_parabolic,
    semidirect,
)
from geoforge.ops.selfdual import SelfDualTwist, self_dual_choices, self_dual_twist
from geoforge.ops.twisting import (
    Admissibility,
    OrbitData,
    OrbitTable,
    check_admissible,
    orbit_identity_violations,
    orbit_table,
    representative_choices,
    twist,
    twist_formula_parabolic,
)
from geoforge.ops.wreath import realize_wreath, wreath, wreath_formula_parabolic

__all__ = [
    "ActionSpec",
    "Admissibility",
    "ConjugationAction",
    "CoordinateAction",
    "ImagesAction",
    "OrbitData",
    "OrbitTable",
    "SelfDualTwist",
    "TrivialAction",
    "TypeAction",
    "check_admissible",
    "direct_power",
    "direct_product",
    "orbit_identity_violations",
    "orbit_table",
    "product_formula_parabolic",
    "realize_wreath",
    "representative_choices",
    "self_dual_choices",
    "self_dual_twist",
    "semidirect",
    "twist",
    "twist_formula_parabolic",
    "validate_action",
    "wreath",
    "wreath_formula_parabolic",
]
