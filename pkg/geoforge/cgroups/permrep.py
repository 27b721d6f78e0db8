"""Permutation representation graphs and their text format.

Format::

    n=6
    0: 1-2
    1: 1-3 2-4
    2: 3-5 4-6

One line per generator index; an i-edge {a, b} for every 2-cycle of rho_i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from geoforge.cgroups.generators import GeneratorSystem
from geoforge.common.errors import NotAMatching, ParseError, PointOutOfRange
from geoforge.groupcore.permutation import Permutation

_HEADER = re.compile(r"^n\s*=\s*(\d+)\s*$")
_LINE = re.compile(r"^(\d+)\s*:(.*)$")
_EDGE = re.compile(r"^(\d+)-(\d+)$")


@dataclass(frozen=True)
class PermRepGraph:
    n: int
    edges: tuple[tuple[int, int, int], ...]

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted({label for _, _, label in self.edges}))

    def edges_of(self, label: int) -> list[tuple[int, int]]:
        return sorted((a, b) for a, b, i in self.edges if i == label)

    def check_matching(self) -> None:
        """Each label's edges must be pairwise disjoint."""
        seen: set[tuple[int, int]] = set()
        for a, b, label in self.edges:
            for v in (a, b):
                if not 1 <= v <= self.n:
                    raise PointOutOfRange(v, self.n)
                if (label, v) in seen:
                    raise NotAMatching(label, v)
                seen.add((label, v))


def permrep_graph_of(S: GeneratorSystem) -> PermRepGraph:
    """One i-edge per 2-cycle of rho_i; generators must be permutations."""
    edges = []
    degree = 0
    for i, g in enumerate(S.generators):
        if not isinstance(g, Permutation):
            raise TypeError("Permutation representation graphs need permutation generators")
        degree = g.degree
        for cycle in g.cycles():
            edges.append((cycle[0], cycle[1], i))
    return PermRepGraph(degree, tuple(edges))


def emit_permrep_graph(graph: PermRepGraph, rank: int | None = None) -> str:
    count = rank if rank is not None else (max(graph.labels) + 1 if graph.edges else 0)
    lines = [f"n={graph.n}"]
    for label in range(count):
        pairs = " ".join(f"{a}-{b}" for a, b in graph.edges_of(label))
        lines.append(f"{label}: {pairs}".rstrip())
    return "\n".join(lines) + "\n"


def emit(S: GeneratorSystem) -> str:
    return emit_permrep_graph(permrep_graph_of(S), rank=S.rank)


def parse_permrep_graph_text(text: str) -> tuple[PermRepGraph, int]:
    """Parse the text format into a graph and the number of generator lines.

    Raises:
        ParseError: With the 1-based line and column of the first problem.
        PointOutOfRange: For a vertex outside 1..n.
        NotAMatching: When two i-edges share a vertex.
    """
    lines = [line for line in text.splitlines()]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("Empty permutation representation graph", 1, 1)
    header = _HEADER.match(lines[0].strip())
    if header is None:
        raise ParseError("Expected 'n=<vertices>'", 1, 1)
    n = int(header.group(1))
    edges: list[tuple[int, int, int]] = []
    expected = 0
    for number, raw in enumerate(lines[1:], start=2):
        match = _LINE.match(raw.strip())
        if match is None:
            raise ParseError("Expected '<label>: a-b ...'", number, 1)
        label = int(match.group(1))
        if label != expected:
            raise ParseError(f"Expected label {expected}, got {label}", number, 1)
        expected += 1
        body = match.group(2)
        offset = raw.index(":") + 2
        for token in body.split():
            edge = _EDGE.match(token)
            col = offset + body.find(token)
            if edge is None:
                raise ParseError(f"Malformed edge {token!r}", number, col)
            a, b = int(edge.group(1)), int(edge.group(2))
            if a == b:
                raise ParseError(f"Loop {token!r}", number, col)
            edges.append((min(a, b), max(a, b), label))
    graph = PermRepGraph(n, tuple(edges))
    graph.check_matching()
    return graph, expected


def parse_permrep_graph(text: str, name: str = "") -> GeneratorSystem:
    """Rebuild rho_i as the product of the transpositions on its i-edges."""
    graph, rank = parse_permrep_graph_text(text)
    perms = [
        Permutation.from_cycles(graph.edges_of(label), graph.n) for label in range(rank)
    ]
    return GeneratorSystem.from_permutations(perms, name=name)
