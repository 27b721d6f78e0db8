"""Involution generator systems, the string and intersection properties, Coxeter diagrams."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any, Literal

import networkx as nx

from geoforge.common.errors import InputError, NotAnInvolution
from geoforge.common.reports import CheckReport, make_report, timed
from geoforge.cosetgeom.system import CosetSystem
from geoforge.groupcore.groups import Element, FiniteGroup, PermGroup
from geoforge.groupcore.permutation import Permutation
from geoforge.groupcore.subgroups import Subgroup, intersect

logger = logging.getLogger(__name__)

IntersectionMode = Literal["full", "reduced2E16", "reduced"]


class GeneratorSystem:
    """An ordered list of labelled involutions inside a group.

    ``group`` is the ambient group; ``span`` is the subgroup the involutions
    generate.
    """

    def __init__(
        self,
        group: FiniteGroup,
        generators: Mapping[str, Element] | Sequence[Element],
        name: str = "",
    ) -> None:
        if not isinstance(generators, Mapping):
            generators = {f"r{i}": g for i, g in enumerate(generators)}
        self.group = group
        self.labels: tuple[str, ...] = tuple(generators)
        self.generators: tuple[Element, ...] = tuple(generators.values())
        self.name = name
        identity = group.identity()
        for label, g in zip(self.labels, self.generators, strict=True):
            group.check(g)
            if g == identity or group.multiply(g, g) != identity:
                raise NotAnInvolution(label)
        self.span = Subgroup(group, self.generators, name=name)

    @classmethod
    def from_permutations(
        cls,
        perms: Sequence[Permutation],
        labels: Sequence[str] | None = None,
        name: str = "",
    ) -> GeneratorSystem:
        names = list(labels) if labels is not None else [f"r{i}" for i in range(len(perms))]
        if not perms:
            raise ValueError("A generator system needs at least one permutation")
        group = PermGroup(dict(zip(names, perms, strict=True)), perms[0].degree, name=name)
        return cls(group, dict(zip(names, perms, strict=True)), name=name)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def __getitem__(self, i: int) -> Element:
        return self.generators[i]

    def __len__(self) -> int:
        return len(self.generators)

    def items(self) -> Iterable[tuple[str, Element]]:
        return zip(self.labels, self.generators, strict=True)

    def subgroup(self, indices: Iterable[int]) -> Subgroup:
        """<rho_i : i in indices>."""
        return Subgroup(self.group, [self.generators[i] for i in sorted(set(indices))])

    def order(self) -> int:
        return self.span.order()

    def product_order(self, i: int, j: int) -> int:
        return self.group.element_order(self.group.multiply(self.generators[i], self.generators[j]))

    def replaced(self, index: int, element: Element) -> GeneratorSystem:
        gens = dict(self.items())
        gens[self.labels[index]] = element
        return GeneratorSystem(self.group, gens, name=self.name)

    def to_json(self) -> dict[str, Any]:
        return {label: str(g) for label, g in self.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneratorSystem):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return f"GeneratorSystem({self.name or 'S'}, rank={self.rank})"


def check_string_property(S: GeneratorSystem) -> CheckReport:
    """Non-consecutive generators commute."""
    with timed() as watch:
        witness = None
        for i, j in itertools.combinations(range(S.rank), 2):
            if j - i > 1 and S.product_order(i, j) > 2:
                witness = {"i": i, "j": j, "order": S.product_order(i, j)}
                break
    return make_report("string", "pairwise-commutation", witness, watch)


def check_intersection_property(
    S: GeneratorSystem,
    mode: IntersectionMode = "full",
    *,
    certified: Iterable[Sequence[int]] = (),
) -> CheckReport:
    """<M> meet <N> = <M meet N> for generator subsets M, N.

    ``full`` sweeps all pairs of subsets by increasing |M| + |N|. The
    ``reduced2E16`` mode (alias ``reduced``) applies to string groups of
    rank at least 3: the system is a C-group exactly when both end-deleted
    subsystems are and G_0 meet G_{r-1} = <rho_1, ..., rho_{r-2}>; it
    recurses on the two subsystems. ``certified`` lists index tuples
    already known to be C-groups; the recursion skips them. Non-string
    input falls back to the full sweep.

    Raises:
        InputError: For an unknown mode.
    """
    if mode not in ("full", "reduced2E16", "reduced"):
        raise InputError(f"Unknown intersection-property mode {mode!r}")
    with timed() as watch:
        if mode == "full" or S.rank < 3 or not check_string_property(S).passed:
            method = "full" if mode == "full" else "full-fallback"
            witness = _full_witness(S, tuple(range(S.rank)), {})
        else:
            method = "reduced2E16"
            known = {tuple(c) for c in certified}
            witness = _reduced_witness(S, tuple(range(S.rank)), known, {})
    return make_report("intersection-property", method, witness, watch)


def _span(S: GeneratorSystem, indices: Iterable[int], cache: dict) -> Subgroup:
    key = frozenset(indices)
    if key not in cache:
        cache[key] = S.subgroup(key)
    return cache[key]


def _full_witness(S: GeneratorSystem, pool: tuple[int, ...], cache: dict) -> dict | None:
    subsets = [frozenset(c) for k in range(len(pool) + 1) for c in itertools.combinations(pool, k)]
    pairs = [
        (M, N)
        for a, M in enumerate(subsets)
        for N in subsets[a + 1 :]
        if not (M <= N or N <= M)
    ]
    pairs.sort(key=lambda mn: (len(mn[0]) + len(mn[1]), sorted(mn[0]), sorted(mn[1])))
    for M, N in pairs:
        meet = intersect(_span(S, M, cache), _span(S, N, cache))
        lower = _span(S, M & N, cache)
        if meet.order() != lower.order():
            extra = min(g for g in meet.elements() if not lower.contains(g))
            return {"M": sorted(M), "N": sorted(N), "g": extra}
    return None


def _reduced_witness(
    S: GeneratorSystem, pool: tuple[int, ...], known: set[tuple[int, ...]], cache: dict
) -> dict | None:
    if pool in known:
        return None
    if len(pool) < 3:
        witness = _full_witness(S, pool, cache)
    else:
        witness = _reduced_witness(S, pool[1:], known, cache) or _reduced_witness(
            S, pool[:-1], known, cache
        )
        if witness is None:
            meet = intersect(_span(S, pool[1:], cache), _span(S, pool[:-1], cache))
            middle = _span(S, pool[1:-1], cache)
            if meet.order() != middle.order():
                extra = min(g for g in meet.elements() if not middle.contains(g))
                witness = {"M": list(pool[1:]), "N": list(pool[:-1]), "g": extra}
    if witness is None:
        known.add(pool)
    return witness


# --- Diagrams ---


@dataclass(frozen=True)
class CoxeterDiagram:
    """Nodes are generator labels; an edge carries o(rho_i rho_j) when it is at least 3."""

    labels: tuple[str, ...]
    orders: dict[tuple[int, int], int]

    @property
    def edges(self) -> dict[tuple[int, int], int]:
        return {pair: p for pair, p in self.orders.items() if p >= 3}

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.labels)))
        for (i, j), p in self.edges.items():
            graph.add_edge(i, j, label=p)
        return graph

    @property
    def linear(self) -> bool:
        """A single path through all nodes."""
        graph = self.to_networkx()
        if graph.number_of_nodes() <= 1:
            return True
        return (
            nx.is_connected(graph)
            and nx.is_forest(graph)
            and max(d for _, d in graph.degree()) <= 2
        )

    def path_labels(self) -> tuple[int, ...] | None:
        """Edge labels along the path, starting from the end with the smaller index."""
        if not self.linear:
            return None
        graph = self.to_networkx()
        if graph.number_of_nodes() <= 1:
            return ()
        ends = sorted(n for n, d in graph.degree() if d == 1)
        path = [ends[0]]
        while len(path) < graph.number_of_nodes():
            path.append(next(n for n in graph.neighbors(path[-1]) if n not in path))
        return tuple(graph.edges[a, b]["label"] for a, b in itertools.pairwise(path))

    def to_json(self) -> dict[str, Any]:
        return {
            "nodes": list(self.labels),
            "edges": [[self.labels[i], self.labels[j], p] for (i, j), p in sorted(self.edges.items())],
            "linear": self.linear,
        }


def coxeter_diagram(S: GeneratorSystem) -> CoxeterDiagram:
    orders = {
        (i, j): S.product_order(i, j) for i, j in itertools.combinations(range(S.rank), 2)
    }
    return CoxeterDiagram(S.labels, orders)


# --- Systems and halving ---


def cgroup_system(
    S: GeneratorSystem, labels: Sequence[Hashable] | None = None, name: str = ""
) -> CosetSystem:
    """G_i = <S - rho_i> over the types 0..r-1 (or ``labels``)."""
    types = list(labels) if labels is not None else list(range(S.rank))
    parabolics = {
        t: S.subgroup(j for j in range(S.rank) if j != i) for i, t in enumerate(types)
    }
    return CosetSystem(S.span, parabolics, name=name or S.name)


@dataclass(frozen=True)
class HalvingResult:
    system: GeneratorSystem
    order: int
    index: int


def halve(S: GeneratorSystem, a: int, b: int) -> HalvingResult:
    """Replace rho_a by rho_a rho_b rho_a.

    Applying the same replacement twice restores S exactly when
    (rho_a rho_b)^3 = 1.
    """
    if a == b:
        raise InputError("Halving needs two distinct generator indices")
    group = S.group
    rho_a, rho_b = S[a], S[b]
    halved = S.replaced(a, group.product(rho_a, rho_b, rho_a))
    order = halved.order()
    result = HalvingResult(halved, order, S.order() // order)
    logger.info("Halved %s at (%d, %d): order %d, index %d", S.name or "S", a, b, order, result.index)
    return result
