"""Subgroups, cosets, intersections and set products."""

from __future__ import annotations

import logging
import threading
from collections.abc import Callable, Iterable
from typing import Any

from geoforge.common.config import current_caps
from geoforge.common.errors import CapExceeded, DegreeMismatch
from geoforge.groupcore.chain import StabilizerChain
from geoforge.groupcore.groups import (
    Element,
    ElementSet,
    FiniteGroup,
    PermGroup,
    closure,
    unique_generators,
)
from geoforge.groupcore.permutation import Permutation

logger = logging.getLogger(__name__)


class Subgroup:
    """The subgroup of ``parent`` generated by ``generators``.

    Order and membership go through a stabilizer chain when the parent is a
    permutation group and through a capped closure otherwise. Caches are
    filled once under a lock and never change afterwards.
    """

    def __init__(
        self,
        parent: FiniteGroup,
        generators: Iterable[Element],
        *,
        name: str = "",
        elements: ElementSet | None = None,
    ) -> None:
        self.parent = parent
        self.generators: tuple[Element, ...] = tuple(
            unique_generators(generators, parent.identity())
        )
        self.name = name
        self._elements = elements
        self._chain: StabilizerChain | None = None
        self._order: int | None = len(elements) if elements is not None else None
        self._lock = threading.Lock()

    @classmethod
    def trivial(cls, parent: FiniteGroup) -> Subgroup:
        return cls(parent, [], elements=ElementSet([parent.identity()]))

    @classmethod
    def from_elements(cls, parent: FiniteGroup, elements: Iterable[Element]) -> Subgroup:
        """Wrap a set known to be a subgroup, choosing a small generating set."""
        members = ElementSet(elements)
        gens: list[Element] = []
        reached = {parent.identity()}
        for x in members:
            if x not in reached:
                gens.append(x)
                reached = set(closure(gens, parent.multiply, parent.identity()))
        return cls(parent, gens, elements=members)

    # --- Backends ---

    def chain(self) -> StabilizerChain:
        if not isinstance(self.parent, PermGroup):
            raise TypeError("Stabilizer chains exist only for permutation groups")
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(self.generators, self.parent.degree)
        return self._chain

    def elements(self, cap: int | None = None) -> ElementSet:
        """All elements; raises CapExceeded above the closure cap."""
        if self._elements is None:
            limit = cap if cap is not None else current_caps().closure
            if self._order is not None and self._order > limit:
                raise CapExceeded(limit, self._order, "subgroup enumeration")
            if isinstance(self.parent, PermGroup) and self.chain().order() > limit:
                raise CapExceeded(limit, self.chain().order(), "subgroup enumeration")
            members = closure(
                self.generators, self.parent.multiply, self.parent.identity(), limit
            )
            with self._lock:
                if self._elements is None:
                    self._elements = members
                    self._order = len(members)
        return self._elements

    def order(self) -> int:
        if self._order is None:
            if isinstance(self.parent, PermGroup):
                self._order = self.chain().order()
            else:
                self._order = len(self.elements())
        return self._order

    def __len__(self) -> int:
        return self.order()

    def contains(self, g: Element) -> bool:
        if not self.parent.owns(g):
            return False
        if self._elements is not None:
            return g in self._elements
        if isinstance(self.parent, PermGroup):
            return self.chain().contains(g)
        return g in self.elements()

    def __contains__(self, g: Element) -> bool:
        return self.contains(g)

    # --- Comparisons ---

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return all(other.contains(g) for g in self.generators)

    def same_as(self, other: Subgroup) -> bool:
        """Equality as sets of elements."""
        return self.order() == other.order() and self.is_subgroup_of(other)

    def is_trivial(self) -> bool:
        return not self.generators

    def to_json(self) -> dict[str, Any]:
        return {
            "generators": [str(g) for g in self.generators],
            "order": self._order,
        }

    def __repr__(self) -> str:
        label = self.name or ", ".join(str(g) for g in self.generators) or "e"
        return f"<{label}>"


def generated(parent: FiniteGroup, *parts: Subgroup | Iterable[Element]) -> Subgroup:
    """Subgroup generated by the union of subgroups and element lists."""
    gens: list[Element] = []
    for part in parts:
        gens.extend(part.generators if isinstance(part, Subgroup) else part)
    return Subgroup(parent, gens)


def contains(H: Subgroup, g: Element) -> bool:
    return H.contains(g)


def intersect(H: Subgroup, K: Subgroup, cap: int | None = None) -> Subgroup:
    """H meet K, by enumerating the smaller side and filtering by membership."""
    if H is K:
        return H
    limit = cap if cap is not None else current_caps().closure
    small, big = (H, K) if H.order() <= K.order() else (K, H)
    if small.order() > limit:
        raise CapExceeded(limit, small.order(), "intersection")
    if small.is_subgroup_of(big):
        return small
    members = [g for g in small.elements(limit) if big.contains(g)]
    return Subgroup.from_elements(H.parent, members)


def product_set(H: Subgroup, K: Subgroup, cap: int | None = None) -> ElementSet:
    """{hk : h in H, k in K}."""
    limit = cap if cap is not None else current_caps().product
    size = H.order() * K.order()
    if size > limit:
        raise CapExceeded(limit, size, "product set")
    multiply = H.parent.multiply
    k_elements = K.elements().sorted()
    return ElementSet(multiply(h, k) for h in H.elements() for k in k_elements)


def left_coset(H: Subgroup, g: Element) -> ElementSet:
    multiply = H.parent.multiply
    return ElementSet(multiply(g, h) for h in H.elements())


def left_transversal(G: Subgroup, H: Subgroup, cap: int | None = None) -> list[Element]:
    """The order-minimum of every left coset gH, in increasing order.

    ``cap`` bounds the number of cosets; G itself is enumerated under the
    closure cap.
    """
    limit = cap if cap is not None else current_caps().closure
    index = G.order() // H.order()
    if index > limit:
        raise CapExceeded(limit, index, "transversal")
    multiply = G.parent.multiply
    h_elements = H.elements().sorted()
    covered: set[Element] = set()
    reps = []
    for g in G.elements().sorted():
        if g in covered:
            continue
        reps.append(g)
        covered.update(multiply(g, h) for h in h_elements)
    return reps


def coset_lookup(G: Subgroup, H: Subgroup) -> tuple[list[Element], dict[Element, int]]:
    """Transversal plus a map from every element of G to its coset index."""
    multiply = G.parent.multiply
    h_elements = H.elements().sorted()
    index_of: dict[Element, int] = {}
    reps: list[Element] = []
    for g in G.elements():
        if g in index_of:
            continue
        k = len(reps)
        reps.append(g)
        for h in h_elements:
            index_of[multiply(g, h)] = k
    return reps, index_of


def conjugate(H: Subgroup, g: Element, ambient: FiniteGroup | None = None) -> Subgroup:
    """Subgroup generated by g^-1 h g over the generators h of H.

    ``g`` may come from an ambient permutation group of the same degree.
    """
    group = ambient or H.parent
    if isinstance(g, Permutation) and isinstance(H.parent, PermGroup):
        if g.degree != H.parent.degree:
            raise DegreeMismatch(f"Conjugating degree {g.degree} into {H.parent.degree}")
        return Subgroup(H.parent, [h.conjugate_by(g) for h in H.generators])
    return Subgroup(H.parent, [group.conjugate(h, g) for h in H.generators])


def coset_action(
    G: Subgroup, H: Subgroup
) -> tuple[PermGroup, Callable[[Element], Permutation]]:
    """Permutation representation of G on the left cosets of H.

    Point i+1 is the coset of the i-th transversal element. The image of g
    sends coset xH to g^-1 xH, which makes g -> perm(g) a homomorphism for
    right-acting permutations.

    Returns:
        The image group (generated by the images of G's generators) and the
        map sending any element of G to its image.
    """
    reps, index_of = coset_lookup(G, H)
    degree = len(reps)
    invert, multiply = G.parent.invert, G.parent.multiply

    def image(g: Element) -> Permutation:
        g_inv = invert(g)
        return Permutation._from_af(tuple(index_of[multiply(g_inv, r)] for r in reps))

    gens = {f"q{k}": image(g) for k, g in enumerate(G.generators)}
    return PermGroup(gens, degree, name=f"{G.name or 'G'}/{H.name or 'H'}"), image
