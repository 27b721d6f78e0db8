"""Search for rank-3 string C-group generators (t, inv_0, inv_1) of a given group."""

from __future__ import annotations

import logging

from geoforge.cgroups.generators import GeneratorSystem, check_intersection_property
from geoforge.common.config import Caps, current_caps
from geoforge.common.errors import CapExceeded, NotAnInvolution, NotFound
from geoforge.groupcore.groups import Element, FiniteGroup
from geoforge.groupcore.subgroups import Subgroup

logger = logging.getLogger(__name__)


def involutions(G: FiniteGroup, caps: Caps | None = None) -> list[Element]:
    """All elements of order 2, in sorted order."""
    limit = (caps or current_caps()).involutions
    order = G.order()
    if order > limit:
        raise CapExceeded(limit, order, "involution enumeration")
    identity = G.identity()
    return [x for x in G.elements() if x != identity and G.multiply(x, x) == identity]


def search_rank3_polytope(
    G: FiniteGroup, t: Element, caps: Caps | None = None
) -> GeneratorSystem:
    """First triple (t, inv_0, inv_1) generating G with the intersection property.

    inv_1 runs over the involutions with o(inv_1 t) = 2; inv_0 over those with
    o(inv_0 t) >= 3 and o(inv_0 inv_1) odd. Both loops follow the sorted
    order of the involutions.

    Raises:
        NotAnInvolution: If t is not an involution.
        CapExceeded: If |G| is above the involution cap.
        NotFound: When no triple qualifies.
    """
    identity = G.identity()
    if t == identity or G.multiply(t, t) != identity:
        raise NotAnInvolution("t")
    invs = involutions(G, caps)
    target = G.order()
    tried = 0

    def order_of(x: Element, y: Element) -> int:
        return G.element_order(G.multiply(x, y))

    for inv_1 in invs:
        if order_of(inv_1, t) != 2:
            continue
        for inv_0 in invs:
            if order_of(inv_0, t) < 3 or order_of(inv_0, inv_1) % 2 == 0:
                continue
            tried += 1
            if Subgroup(G, [t, inv_0, inv_1]).order() != target:
                continue
            S = GeneratorSystem(G, {"t": t, "inv_0": inv_0, "inv_1": inv_1})
            if check_intersection_property(S, "full").passed:
                logger.info(
                    "Found rank-3 generators after %d candidates: type {%d, %d}",
                    tried,
                    order_of(t, inv_0),
                    order_of(inv_0, inv_1),
                )
                return S
    logger.warning("No rank-3 generators found among %d candidates", tried)
    raise NotFound(f"No rank-3 string C-group generators with t = {t}")
