"""Direct products, direct powers and semidirect products of groups and systems."""

from __future__ import annotations

import logging
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from geoforge.common.errors import ActionNotValidated, TypeLabelCollision
from geoforge.cosetgeom.system import CosetSystem
from geoforge.groupcore.groups import FiniteGroup, ProductGroup, SemidirectGroup
from geoforge.groupcore.subgroups import Subgroup
from geoforge.ops.actions import ActionSpec

logger = logging.getLogger(__name__)

TypeLabel = Hashable


@dataclass(frozen=True)
class ProductProvenance:
    kind: str
    factors: tuple[CosetSystem, ...]
    labels: tuple[Any, ...]


def semidirect(A: FiniteGroup, B: FiniteGroup, action: ActionSpec, name: str = "") -> SemidirectGroup:
    """A x|_phi B on pairs (a, b) with (a1, b1)(a2, b2) = (a1 phi(b1)(a2), b1 b2).

    Raises:
        ActionNotValidated: Unless ``action`` passed exhaustive validation.
    """
    if not action.validated:
        raise ActionNotValidated(f"Action {action.name} must be validated before use")
    if action.target is not A or action.actor is not B:
        raise ActionNotValidated(f"Action {action.name} is not an action of these groups")
    return SemidirectGroup(A, B, action.apply, name=name or f"{A.name or 'A'} x| {B.name or 'B'}")


def _check_disjoint(type_lists: Iterable[Sequence[TypeLabel]]) -> None:
    seen: set[TypeLabel] = set()
    clashes = []
    for types in type_lists:
        for t in types:
            if t in seen:
                clashes.append(t)
            seen.add(t)
    if clashes:
        raise TypeLabelCollision(clashes)


def direct_product(alpha: CosetSystem, beta: CosetSystem, name: str = "") -> CosetSystem:
    """alpha x beta: G_i = A_i x B for i in I_alpha and A x B_i for i in I_beta."""
    _check_disjoint([alpha.types, beta.types])
    group = ProductGroup([alpha.parent, beta.parent], labels=("A", "B"))

    def lift(index: int, sub: Subgroup) -> list:
        return [group.embed(index, g) for g in sub.generators]

    whole_a, whole_b = lift(0, alpha.group), lift(1, beta.group)
    parabolics = {t: Subgroup(group, lift(0, alpha.parabolics[t]) + whole_b) for t in alpha.types}
    parabolics.update({t: Subgroup(group, whole_a + lift(1, beta.parabolics[t])) for t in beta.types})
    label = name or f"{alpha.name or 'alpha'} x {beta.name or 'beta'}"
    logger.info("Direct product %s of rank %d", label, len(parabolics))
    return CosetSystem(
        Subgroup(group, whole_a + whole_b, name=label),
        parabolics,
        name=label,
        provenance=ProductProvenance("direct-product", (alpha, beta), ("A", "B")),
        validate=False,
    )


def direct_power(alpha: CosetSystem, omega: Sequence[Any], name: str = "") -> CosetSystem:
    """The product of |omega| copies of alpha with types (t, w)."""
    omega = tuple(omega)
    group = ProductGroup([alpha.parent] * len(omega), labels=omega)

    def lift(k: int, sub: Subgroup) -> list:
        return [group.embed(k, g) for g in sub.generators]

    whole = [lift(k, alpha.group) for k in range(len(omega))]
    parabolics: dict[TypeLabel, Subgroup] = {}
    for k, w in enumerate(omega):
        others = [g for j, gens in enumerate(whole) if j != k for g in gens]
        for t in alpha.types:
            parabolics[(t, w)] = Subgroup(group, lift(k, alpha.parabolics[t]) + others)
    label = name or f"{alpha.name or 'alpha'}^{len(omega)}"
    return CosetSystem(
        Subgroup(group, [g for gens in whole for g in gens], name=label),
        parabolics,
        name=label,
        provenance=ProductProvenance("direct-power", (alpha,) * len(omega), omega),
        validate=False,
    )


def product_formula_parabolic(sys: CosetSystem, J: Iterable[TypeLabel]) -> Subgroup:
    """A_{J_alpha} x B_{J_beta} for a system built by ``direct_product``."""
    provenance = sys.provenance
    if not isinstance(provenance, ProductProvenance) or provenance.kind != "direct-product":
        raise ValueError(f"{sys.name or 'system'} is not a direct product")
    alpha, beta = provenance.factors
    key = sys.key(J)
    group = sys.parent
    assert isinstance(group, ProductGroup)
    a_part = alpha.parabolic(t for t in alpha.types if t in key)
    b_part = beta.parabolic(t for t in beta.types if t in key)
    return Subgroup(
        group,
        [group.embed(0, g) for g in a_part.generators]
        + [group.embed(1, g) for g in b_part.generators],
    )
