"""Finite-group engine: permutations, stabilizer chains, products and subgroups."""

from geoforge.groupcore.automorphism import Automorphism, automorphism_from_images, extend_homomorphism
from geoforge.groupcore.chain import StabilizerChain
from geoforge.groupcore.groups import (
    Element,
    ElementSet,
    FiniteGroup,
    Pair,
    PermGroup,
    ProductGroup,
    SemidirectGroup,
    TupleElement,
    closure,
    element_order,
    group_order,
    invert,
    multiply,
)
from geoforge.groupcore.permutation import Permutation, parse_permutation
from geoforge.groupcore.subgroups import (
    Subgroup,
    conjugate,
    contains,
    coset_action,
    coset_lookup,
    generated,
    intersect,
    left_coset,
    left_transversal,
    product_set,
)

__all__ = [
    "Automorphism",
    "Element",
    "ElementSet",
    "FiniteGroup",
    "Pair",
    "PermGroup",
    "Permutation",
    "ProductGroup",
    "SemidirectGroup",
    "StabilizerChain",
    "Subgroup",
    "TupleElement",
    "automorphism_from_images",
    "closure",
    "conjugate",
    "contains",
    "coset_action",
    "coset_lookup",
    "element_order",
    "extend_homomorphism",
    "generated",
    "group_order",
    "intersect",
    "invert",
    "left_coset",
    "left_transversal",
    "multiply",
    "parse_permutation",
    "product_set",
]
