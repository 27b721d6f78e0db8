"""The street geometry of the lamplighter group.

Type 0 elements (states) are the cosets g<t>: a lamp configuration with the
lighter anywhere. Type 1 elements (uncertain states) are the cosets g<a>: a
configuration with the lamp under the lighter unknown. A state and an
uncertain state are incident when the cosets meet.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations
from typing import Literal

import networkx as nx

from geoforge.streetlight.lamplighter import LampConfig, LamplighterElement, ll_mul

StreetType = Literal["state", "uncertain"]
STATE_TYPE = 0
UNCERTAIN_TYPE = 1


@dataclass(frozen=True, order=True)
class State:
    config: LampConfig

    type = STATE_TYPE

    def to_json(self) -> dict[str, object]:
        return {"type": "state", "on": list(self.config.on)}

    def __str__(self) -> str:
        return f"State{self.config}"


@dataclass(frozen=True, order=True)
class Uncertain:
    known: LampConfig
    position: int

    type = UNCERTAIN_TYPE

    def __post_init__(self) -> None:
        if self.position in self.known:
            raise ValueError(f"Known lamps must not include the uncertain position {self.position}")

    def to_json(self) -> dict[str, object]:
        return {"type": "uncertain", "on": list(self.known.on), "position": self.position}

    def __str__(self) -> str:
        return f"Uncertain{self.known}@{self.position}"


StreetElement = State | Uncertain


def canonical_street(g: LamplighterElement, kind: StreetType = "state") -> StreetElement:
    """The coset g<t> (``state``) or g<a> (``uncertain``) in canonical form."""
    if kind == "state":
        return State(g.config)
    if kind == "uncertain":
        return Uncertain(g.config.without(g.shift), g.shift)
    raise ValueError(f"Unknown street element kind {kind!r}")


def representative(e: StreetElement) -> LamplighterElement:
    """A group element whose coset is ``e``."""
    if isinstance(e, State):
        return LamplighterElement(e.config, 0)
    return LamplighterElement(e.known, e.position)


def incident(s: State, u: Uncertain) -> bool:
    return set(s.config.xor(u.known)) <= {u.position}


def resolve(u: Uncertain) -> tuple[State, State]:
    """The two states incident to ``u``: the unknown lamp off, then on."""
    return State(u.known), State(u.known.toggled(u.position))


def uncertainties_in_window(s: State, window: tuple[int, int]) -> list[Uncertain]:
    """Uncertain states incident to ``s`` with position in [lo, hi]."""
    lo, hi = window
    return [Uncertain(s.config.without(p), p) for p in range(lo, hi + 1)]


def street_path(s1: State, s2: State) -> list[StreetElement]:
    """Toggle the differing lamps in increasing order through their uncertain states.

    The start is not included; the path has 2|c1 xor c2| elements.
    """
    steps: list[StreetElement] = []
    current = s1.config
    for p in s1.config.xor(s2.config):
        steps.append(Uncertain(current.without(p), p))
        current = current.toggled(p)
        steps.append(State(current))
    return steps


def street_act(g: LamplighterElement, e: StreetElement) -> StreetElement:
    """Left multiplication of the underlying coset by g."""
    moved = ll_mul(g, representative(e))
    return canonical_street(moved, "state" if isinstance(e, State) else "uncertain")


def _neighbours(e: StreetElement, positions: Iterable[int]) -> list[StreetElement]:
    if isinstance(e, State):
        return [Uncertain(e.config.without(p), p) for p in positions]
    return list(resolve(e))


def street_window_graph(s: State, window: tuple[int, int]) -> nx.Graph:
    """The street restricted to states agreeing with ``s`` outside the window.

    Uncertain states are the ones whose position lies in [lo, hi].
    """
    lo, hi = window
    positions = range(lo, hi + 1)
    fixed = [p for p in s.config if not lo <= p <= hi]
    graph = nx.Graph()
    for size in range(len(positions) + 1):
        for lit in combinations(positions, size):
            state = State(LampConfig.of([*fixed, *lit]))
            for u in _neighbours(state, positions):
                graph.add_edge(state, u)
    return graph


def street_distance_bfs(s1: State, s2: State, window: tuple[int, int] | None = None) -> int:
    """Length of a shortest path from s1 to s2 with uncertainty positions in the window.

    The default window spans the lamps where s1 and s2 differ.
    """
    diff = list(s1.config.xor(s2.config))
    if not diff:
        return 0
    lo, hi = window if window is not None else (min(diff), max(diff))
    graph = street_window_graph(s1, (lo, hi))
    try:
        return int(nx.shortest_path_length(graph, s1, s2))
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        raise ValueError(f"{s2} is not reachable from {s1} inside the window [{lo}, {hi}]") from None
