"""Type-respecting isomorphism of incidence geometries."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Hashable, Iterator, Mapping

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher, categorical_node_match

from geoforge.common.config import current_caps
from geoforge.common.errors import CapExceeded
from geoforge.materialize.geometry import Geometry

logger = logging.getLogger(__name__)

TypeLabel = Hashable


def _type_bijections(g1: Geometry, g2: Geometry) -> Iterator[dict[TypeLabel, TypeLabel]]:
    """Bijections of type sets that preserve the number of elements per type."""
    counts1, counts2 = g1.count_by_type(), g2.count_by_type()
    for image in itertools.permutations(g2.types):
        candidate = dict(zip(g1.types, image, strict=True))
        if all(counts1[t] == counts2[u] for t, u in candidate.items()):
            yield candidate


def _coloured(geo: Geometry, colour: Mapping[TypeLabel, str]) -> nx.Graph:
    graph = geo.to_networkx().copy()
    for node, data in graph.nodes(data=True):
        data["color"] = colour[data["type"]]
    return graph


def colored_isomorphic(
    g1: Geometry,
    g2: Geometry,
    type_bijection: Mapping[TypeLabel, TypeLabel] | None = None,
) -> dict[int, int] | None:
    """An incidence- and type-preserving bijection from g1 to g2, or None.

    With ``type_bijection`` the types must correspond as given; otherwise
    every count-preserving bijection of types is tried. A Weisfeiler-Lehman
    hash screens each candidate before the VF2 search.
    """
    limit = current_caps().isomorphism
    largest = max(len(g1), len(g2))
    if largest > limit:
        raise CapExceeded(limit, largest, "isomorphism search")
    if g1 is g2:
        return {k: k for k in range(len(g1))}
    if len(g1) != len(g2) or g1.rank != g2.rank:
        return None
    if len(g1.incidence_pairs()) != len(g2.incidence_pairs()):
        return None

    candidates = [dict(type_bijection)] if type_bijection is not None else _type_bijections(g1, g2)
    for bijection in candidates:
        colour2 = {u: str(k) for k, u in enumerate(g2.types)}
        colour1 = {t: colour2[bijection[t]] for t in g1.types}
        graph1, graph2 = _coloured(g1, colour1), _coloured(g2, colour2)
        if nx.weisfeiler_lehman_graph_hash(graph1, node_attr="color") != (
            nx.weisfeiler_lehman_graph_hash(graph2, node_attr="color")
        ):
            continue
        matcher = GraphMatcher(graph1, graph2, node_match=categorical_node_match("color", None))
        if matcher.is_isomorphic():
            logger.debug("Isomorphism found under type bijection %s", bijection)
            return dict(sorted(matcher.mapping.items()))
    return None
