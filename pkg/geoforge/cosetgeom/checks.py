"""Algebraic checkers: flag-transitivity, residual connectedness, firm and thin.

All sweeps walk type subsets by increasing size and then by type position,
so the first violation found (the reported witness) is deterministic.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from typing import Literal

from geoforge.common.errors import EmptyTypeSet, InputError
from geoforge.common.reports import CheckReport, make_report, timed
from geoforge.cosetgeom.system import CosetSystem, TypeLabel
from geoforge.groupcore.groups import ElementSet
from geoforge.groupcore.subgroups import (
    Subgroup,
    generated,
    intersect,
    left_transversal,
    product_set,
)

logger = logging.getLogger(__name__)

FlagMethod = Literal["product", "triple", "geometry"]
RCVariant = Literal["RC1", "RC2", "intersection"]


def check_flag_transitive(sys: CosetSystem, method: FlagMethod = "product") -> CheckReport:
    """Decide flag-transitivity of the coset system.

    Args:
        sys: The coset system.
        method: ``product`` compares G_J G_i with the intersection of the
            G_j G_i; ``triple`` looks for three pairwise-meeting cosets
            without a common element; ``geometry`` materializes the
            geometry and counts chamber orbits.

    Returns:
        A report whose witness locates the first violation.
    """
    if sys.rank == 0:
        raise EmptyTypeSet("Flag-transitivity needs at least one type")
    with timed() as watch:
        if method == "product":
            witness = _flag_witness_product(sys)
        elif method == "triple":
            witness = _flag_witness_triple(sys)
        elif method == "geometry":
            witness = _flag_witness_geometry(sys)
        else:
            raise InputError(f"Unknown flag-transitivity method {method!r}")
    logger.debug("flag-transitive[%s] on %s: %s", method, sys.name, witness is None)
    return make_report("flag-transitive", method, witness, watch)


def _flag_witness_product(sys: CosetSystem) -> dict | None:
    pair_products: dict[tuple[TypeLabel, TypeLabel], ElementSet] = {}

    def pair(j: TypeLabel, i: TypeLabel) -> ElementSet:
        if (j, i) not in pair_products:
            pair_products[(j, i)] = product_set(sys.parabolics[j], sys.parabolics[i])
        return pair_products[(j, i)]

    for J in sys.subsets(min_size=2):
        for i in sys.complement(J):
            lhs = product_set(sys.parabolic(J), sys.parabolics[i])
            rhs = frozenset.intersection(*(pair(j, i) for j in J))
            if len(rhs) != len(lhs):
                extra = min(x for x in rhs if x not in lhs)
                return {"J": J, "i": i, "g": extra}
    return None


def _flag_witness_triple(sys: CosetSystem) -> dict | None:
    group = sys.group
    multiply = sys.parent.multiply
    members = {t: sys.parabolics[t].elements() for t in sys.types}
    transversals = {t: left_transversal(group, sys.parabolics[t]) for t in sys.types}
    for J in sys.subsets(min_size=1):
        g_j = sys.parabolic(J).elements()
        rest = sys.complement(J)
        for i in rest:
            for k in rest:
                if i == k:
                    continue
                g_i = members[i]
                g_k = members[k].sorted()
                for y in transversals[k]:
                    coset = [multiply(y, h) for h in g_k]
                    meets_j = any(x in g_j for x in coset)
                    meets_i = any(x in g_i for x in coset)
                    if meets_j and meets_i and not any(x in g_j and x in g_i for x in coset):
                        return {"J": J, "i": i, "k": k, "g": y}
    return None


def _flag_witness_geometry(sys: CosetSystem) -> dict | None:
    from geoforge.materialize.geometry import chamber_orbits, find_unextendable_flag, materialize

    geo = materialize(sys)
    stuck = find_unextendable_flag(geo)
    if stuck is not None:
        return {"reason": "maximal flag is not a chamber", "flag": stuck}
    orbits = chamber_orbits(geo, sys)
    if orbits != 1:
        return {"reason": "chamber orbits", "orbits": orbits}
    return None


# --- Residual connectedness ---


def check_residually_connected(sys: CosetSystem, variant: RCVariant = "RC1") -> CheckReport:
    """Decide residual connectedness through parabolic generation conditions.

    ``RC1``: G_J is generated by the G_{J+i}, i outside J, whenever at least
    two types lie outside J. ``RC2``: any two of those already generate G_J.
    ``intersection``: with G^J generated by the Borel subgroup and the
    minimal parabolics G^j (j in J), G^J = G_{I-J} for all J and
    G^J meet G^K = G^{J meet K} for all J, K.
    """
    with timed() as watch:
        if variant == "RC1":
            witness = _rc1_witness(sys)
        elif variant == "RC2":
            witness = _rc2_witness(sys)
        elif variant == "intersection":
            witness = _rc_intersection_witness(sys)
        else:
            raise InputError(f"Unknown residual-connectedness variant {variant!r}")
    return make_report("residually-connected", variant, witness, watch)


def _rc1_witness(sys: CosetSystem) -> dict | None:
    for J in sys.subsets(max_size=sys.rank - 2):
        target = sys.parabolic(J)
        spanned = generated(sys.parent, *(sys.parabolic((*J, i)) for i in sys.complement(J)))
        if spanned.order() != target.order():
            return {"J": J, "order": target.order(), "generated": spanned.order()}
    return None


def _rc2_witness(sys: CosetSystem) -> dict | None:
    for J in sys.subsets(max_size=sys.rank - 2):
        target = sys.parabolic(J)
        rest = sys.complement(J)
        for a, i in enumerate(rest):
            for k in rest[a + 1 :]:
                spanned = generated(sys.parent, sys.parabolic((*J, i)), sys.parabolic((*J, k)))
                if spanned.order() != target.order():
                    return {"J": J, "i": i, "k": k, "generated": spanned.order()}
    return None


def _rc_intersection_witness(sys: CosetSystem) -> dict | None:
    borel = sys.borel()
    upper: dict[frozenset, Subgroup] = {}

    def minimal_span(J: Iterable[TypeLabel]) -> Subgroup:
        key = frozenset(J)
        if key not in upper:
            upper[key] = generated(sys.parent, borel, *(sys.minimal_parabolic(j) for j in key))
        return upper[key]

    subsets = list(sys.subsets())
    for J in subsets:
        if minimal_span(J).order() != sys.parabolic(sys.complement(J)).order():
            return {"J": J, "reason": "minimal parabolics do not span"}
    for a, J in enumerate(subsets):
        for K in subsets[a + 1 :]:
            meet = intersect(minimal_span(J), minimal_span(K))
            common = tuple(t for t in J if t in K)
            if meet.order() != minimal_span(common).order():
                return {"J": J, "K": K, "order": meet.order()}
    return None


# --- Firm and thin ---


def check_firm_thin(
    sys: CosetSystem, *, waive_flag_transitivity: bool = False
) -> tuple[CheckReport, CheckReport]:
    """FIRM and THIN verdicts from the indices [G^i : G_I].

    The index criterion is only valid for flag-transitive systems. When the
    caller waives the check, or it fails, both reports are marked
    conditional.
    """
    with timed() as watch:
        if waive_flag_transitivity:
            conditional = True
        else:
            conditional = not check_flag_transitive(sys, "product").passed
        borel_order = sys.borel().order()
        indices = {t: sys.minimal_parabolic(t).order() // borel_order for t in sys.types}
    firm_witness = next(({"i": t, "index": n} for t, n in indices.items() if n < 2), None)
    thin_witness = next(({"i": t, "index": n} for t, n in indices.items() if n != 2), None)
    details = {"indices": indices}
    firm = make_report(
        "firm", "parabolic-index", firm_witness, watch, conditional=conditional, details=details
    )
    thin = make_report(
        "thin", "parabolic-index", thin_witness, watch, conditional=conditional, details=details
    )
    return firm, thin


# --- Product of intersections ---


def check_product_of_intersections(sys: CosetSystem) -> CheckReport:
    """Sweep (G_J meet G_H)(G_J meet G_K) = G_J meet (G_H G_K) over type subsets.

    Triples where the identity holds for trivial reasons (J inside H or K,
    H or K empty) are skipped, and (H, K) is taken up to swapping.
    """
    with timed() as watch:
        witness = _product_of_intersections_witness(sys)
    return make_report("product-of-intersections", "subset-sweep", witness, watch)


def _product_of_intersections_witness(sys: CosetSystem) -> dict | None:
    subsets = [frozenset(s) for s in sys.subsets()]
    products: dict[tuple[frozenset, frozenset], ElementSet] = {}
    for J in subsets:
        g_j = sys.parabolic(J)
        for a, H in enumerate(subsets):
            if not H or J <= H:
                continue
            for K in subsets[a:]:
                if not K or J <= K:
                    continue
                lhs = product_set(intersect(g_j, sys.parabolic(H)), intersect(g_j, sys.parabolic(K)))
                if (H, K) not in products:
                    products[(H, K)] = product_set(sys.parabolic(H), sys.parabolic(K))
                rhs_size = sum(1 for x in g_j.elements() if x in products[(H, K)])
                if rhs_size != len(lhs):
                    return {"J": sys.ordered(J), "H": sys.ordered(H), "K": sys.ordered(K)}
    return None
