"""Materialized incidence geometries and the direct geometric checks.

This is the brute-force counterpart of the algebraic checkers: elements are
canonical left cosets, incidence is tested by coset intersection, and every
property is decided on the incidence graph itself.
"""

from __future__ import annotations

import logging
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

import networkx as nx

from geoforge.common.config import current_caps
from geoforge.common.errors import CapExceeded, TypeLabelCollision
from geoforge.common.reports import GeometryReport
from geoforge.cosetgeom.system import CosetSystem
from geoforge.groupcore.groups import Element
from geoforge.groupcore.subgroups import coset_lookup

logger = logging.getLogger(__name__)

TypeLabel = Hashable


@dataclass(frozen=True)
class GeometryElement:
    type: TypeLabel
    key: Any


@dataclass(eq=False)
class Geometry:
    """Typed elements with a symmetric incidence relation between distinct types."""

    types: tuple[TypeLabel, ...]
    elements: tuple[GeometryElement, ...]
    adjacency: tuple[frozenset[int], ...]
    name: str = ""
    _graph: nx.Graph | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if len(self.adjacency) != len(self.elements):
            raise ValueError("Adjacency must have one entry per element")
        known = set(self.types)
        for k, element in enumerate(self.elements):
            if element.type not in known:
                raise ValueError(f"Element {k} has unknown type {element.type!r}")
            for other in self.adjacency[k]:
                if k not in self.adjacency[other]:
                    raise ValueError(f"Incidence {k}-{other} is not symmetric")
                if self.elements[other].type == element.type:
                    raise ValueError(f"Elements {k} and {other} share a type")

    @classmethod
    def from_incidences(
        cls,
        types: Sequence[TypeLabel],
        element_types: Sequence[TypeLabel],
        pairs: Iterable[tuple[int, int]],
        *,
        keys: Sequence[Any] | None = None,
        name: str = "",
    ) -> Geometry:
        neighbours: list[set[int]] = [set() for _ in element_types]
        for a, b in pairs:
            neighbours[a].add(b)
            neighbours[b].add(a)
        labels = keys if keys is not None else range(len(element_types))
        return cls(
            tuple(types),
            tuple(GeometryElement(t, k) for t, k in zip(element_types, labels, strict=True)),
            tuple(frozenset(n) for n in neighbours),
            name=name,
        )

    @property
    def rank(self) -> int:
        return len(self.types)

    def __len__(self) -> int:
        return len(self.elements)

    def indices_of_type(self, t: TypeLabel) -> list[int]:
        return [k for k, e in enumerate(self.elements) if e.type == t]

    def count_by_type(self) -> dict[TypeLabel, int]:
        counts = {t: 0 for t in self.types}
        for e in self.elements:
            counts[e.type] += 1
        return counts

    def incident(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def incidence_pairs(self) -> list[tuple[int, int]]:
        return sorted((a, b) for a, nbrs in enumerate(self.adjacency) for b in nbrs if a < b)

    def to_networkx(self) -> nx.Graph:
        """Incidence graph with a ``type`` attribute on every node."""
        if self._graph is None:
            graph = nx.Graph()
            for k, e in enumerate(self.elements):
                graph.add_node(k, type=e.type)
            graph.add_edges_from(self.incidence_pairs())
            self._graph = graph
        return self._graph

    def induced(
        self, indices: Iterable[int], types: Sequence[TypeLabel] | None = None, name: str = ""
    ) -> Geometry:
        """Sub-geometry on the given elements, renumbered in increasing order."""
        chosen = sorted(set(indices))
        renumber = {old: new for new, old in enumerate(chosen)}
        kept_types = tuple(types) if types is not None else self.types
        return Geometry(
            kept_types,
            tuple(self.elements[k] for k in chosen),
            tuple(frozenset(renumber[n] for n in self.adjacency[k] if n in renumber) for k in chosen),
            name=name,
        )


# --- Materialization ---


@dataclass
class _CosetTables:
    reps: dict[TypeLabel, list[Element]]
    index_of: dict[TypeLabel, dict[Element, int]]
    offset: dict[TypeLabel, int]

    def element(self, t: TypeLabel, g: Element) -> int:
        return self.offset[t] + self.index_of[t][g]


def _coset_tables(sys: CosetSystem) -> _CosetTables:
    limit = current_caps().geometry
    total = sum(sys.index(t) for t in sys.types)
    if total > limit:
        raise CapExceeded(limit, total, "geometry elements")
    reps: dict[TypeLabel, list[Element]] = {}
    index_of: dict[TypeLabel, dict[Element, int]] = {}
    offset: dict[TypeLabel, int] = {}
    start = 0
    for t in sys.types:
        reps[t], index_of[t] = coset_lookup(sys.group, sys.parabolics[t])
        offset[t] = start
        start += len(reps[t])
    return _CosetTables(reps, index_of, offset)


def materialize(sys: CosetSystem) -> Geometry:
    """Build the coset geometry of ``sys``.

    xG_i and yG_j are incident when x*h lies in yG_j for some h in G_i; the
    smaller of the two parabolics is enumerated.
    """
    tables = _coset_tables(sys)
    multiply = sys.parent.multiply
    elements = [GeometryElement(t, x) for t in sys.types for x in tables.reps[t]]
    neighbours: list[set[int]] = [set() for _ in elements]
    for a, ti in enumerate(sys.types):
        for tj in sys.types[a + 1 :]:
            g_i, g_j = sys.parabolics[ti], sys.parabolics[tj]
            if g_i.order() <= g_j.order():
                src, dst, sub = ti, tj, g_i
            else:
                src, dst, sub = tj, ti, g_j
            h_elements = sub.elements().sorted()
            for k, x in enumerate(tables.reps[src]):
                u = tables.offset[src] + k
                for h in h_elements:
                    v = tables.element(dst, multiply(x, h))
                    neighbours[u].add(v)
                    neighbours[v].add(u)
    geo = Geometry(
        sys.types,
        tuple(elements),
        tuple(frozenset(n) for n in neighbours),
        name=sys.name,
    )
    logger.info(
        "Materialized %s: %s elements",
        sys.name or "system",
        list(geo.count_by_type().values()),
    )
    return geo


# --- Flags and chambers ---


def chambers(geo: Geometry) -> list[tuple[int, ...]]:
    """All chambers, one element per type in type order, by backtracking."""
    by_type = [set(geo.indices_of_type(t)) for t in geo.types]
    result: list[tuple[int, ...]] = []

    def extend(prefix: list[int], candidates: set[int] | None) -> None:
        depth = len(prefix)
        if depth == len(by_type):
            result.append(tuple(prefix))
            return
        pool = by_type[depth] if candidates is None else by_type[depth] & candidates
        for x in sorted(pool):
            narrowed = set(geo.adjacency[x]) if candidates is None else candidates & geo.adjacency[x]
            prefix.append(x)
            extend(prefix, narrowed)
            prefix.pop()

    extend([], None)
    return result


def find_unextendable_flag(geo: Geometry) -> tuple[int, ...] | None:
    """Smallest maximal flag that is not a chamber, or None for a geometry."""
    bad = [
        tuple(sorted(clique))
        for clique in nx.find_cliques(geo.to_networkx())
        if len(clique) < geo.rank
    ]
    return min(bad) if bad else None


def _common_neighbours(geo: Geometry, flag: Sequence[int]) -> set[int]:
    if not flag:
        return set(range(len(geo)))
    result = set(geo.adjacency[flag[0]])
    for x in flag[1:]:
        result &= geo.adjacency[x]
    return result


def _flags_up_to(geo: Geometry, size: int) -> Iterable[tuple[int, ...]]:
    yield ()
    if size < 1:
        return
    for clique in nx.enumerate_all_cliques(geo.to_networkx()):
        if len(clique) > size:
            break
        yield tuple(sorted(clique))


def check_geometry_direct(geo: Geometry) -> GeometryReport:
    """Geometry, connectedness, residual connectedness, firm, thin, chamber count."""
    limit = current_caps().geometry
    if len(geo) > limit:
        raise CapExceeded(limit, len(geo), "geometry elements")
    graph = geo.to_networkx()
    rank = geo.rank

    connected = len(geo) > 0 and nx.is_connected(graph)

    residually_connected = True
    for flag in _flags_up_to(geo, rank - 2):
        residue = _common_neighbours(geo, flag) - set(flag)
        if not residue or not nx.is_connected(graph.subgraph(residue)):
            residually_connected = False
            break

    firm = thin = True
    corank_one = [f for f in _flags_up_to(geo, rank - 1) if len(f) == rank - 1] if rank else []
    for flag in corank_one:
        size = len(_common_neighbours(geo, flag) - set(flag))
        firm = firm and size >= 2
        thin = thin and size == 2

    return GeometryReport(
        is_geometry=find_unextendable_flag(geo) is None,
        connected=connected,
        residually_connected=residually_connected,
        firm=firm,
        thin=thin,
        chamber_count=len(chambers(geo)),
    )


def chamber_orbits(geo: Geometry, sys: CosetSystem) -> int:
    """Number of orbits of G on chambers, acting by left multiplication."""
    tables = _coset_tables(sys)
    if len(geo) != sum(len(r) for r in tables.reps.values()):
        raise ValueError("Geometry does not come from this coset system")
    multiply = sys.parent.multiply
    all_chambers = chambers(geo)
    position = {c: k for k, c in enumerate(all_chambers)}
    keys = [e.key for e in geo.elements]
    types = [e.type for e in geo.elements]

    def act(g: Element, chamber: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(tables.element(types[x], multiply(g, keys[x])) for x in chamber)

    seen = [False] * len(all_chambers)
    orbits = 0
    for start in range(len(all_chambers)):
        if seen[start]:
            continue
        orbits += 1
        seen[start] = True
        stack = [all_chambers[start]]
        while stack:
            chamber = stack.pop()
            for g in sys.group.generators:
                k = position[act(g, chamber)]
                if not seen[k]:
                    seen[k] = True
                    stack.append(all_chambers[k])
    return orbits


def base_flag_residue(geo: Geometry, sys: CosetSystem, J: Iterable[TypeLabel]) -> Geometry:
    """Residue of the flag {G_j : j in J} of identity cosets."""
    key = sys.key(J)
    identity = sys.parent.identity()
    flag = [
        k for k, e in enumerate(geo.elements) if e.type in key and e.key == identity
    ]
    rest = sys.complement(key)
    residue = _common_neighbours(geo, flag) - set(flag)
    return geo.induced(residue, types=rest, name=f"{geo.name}|{sorted(map(str, key))}")


def join(geos: Sequence[Geometry]) -> Geometry:
    """Disjoint union where elements of different components are all incident."""
    seen: set[TypeLabel] = set()
    collisions = []
    for g in geos:
        for t in g.types:
            if t in seen:
                collisions.append(t)
            seen.add(t)
    if collisions:
        raise TypeLabelCollision(collisions)
    if len(geos) == 1:
        return geos[0]

    types: list[TypeLabel] = []
    elements: list[GeometryElement] = []
    owner: list[int] = []
    offsets = []
    for c, g in enumerate(geos):
        offsets.append(len(elements))
        types.extend(g.types)
        elements.extend(g.elements)
        owner.extend([c] * len(g))
    total = len(elements)
    adjacency = []
    for c, g in enumerate(geos):
        base = offsets[c]
        outside = frozenset(k for k in range(total) if owner[k] != c)
        for nbrs in g.adjacency:
            adjacency.append(frozenset(base + n for n in nbrs) | outside)
    return Geometry(
        tuple(types),
        tuple(elements),
        tuple(adjacency),
        name=" * ".join(g.name or "geometry" for g in geos),
    )
