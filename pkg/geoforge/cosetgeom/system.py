"""Coset incidence systems and their parabolic subgroups."""

from __future__ import annotations

import itertools
import logging
import threading
from collections.abc import Hashable, Iterable, Iterator, Mapping
from typing import Any

from geoforge.common.config import current_caps
from geoforge.common.errors import InputError, MixedGroupOperands, NotNormal, RankGuardExceeded
from geoforge.groupcore.groups import FiniteGroup
from geoforge.groupcore.subgroups import Subgroup, coset_action, intersect

logger = logging.getLogger(__name__)

TypeLabel = Hashable


class CosetSystem:
    """A group G with maximal parabolic subgroups (G_i) indexed by ordered types.

    Elements of type i are the left cosets gG_i; two elements are incident
    when the cosets intersect. ``parabolic(J)`` is the intersection of the
    G_j over J, memoized; G_{} is the group itself.
    """

    def __init__(
        self,
        group: Subgroup | FiniteGroup,
        parabolics: Mapping[TypeLabel, Subgroup],
        *,
        name: str = "",
        provenance: Any = None,
        validate: bool = True,
    ) -> None:
        self.group = group.whole() if isinstance(group, FiniteGroup) else group
        self.types: tuple[TypeLabel, ...] = tuple(parabolics)
        self.parabolics: dict[TypeLabel, Subgroup] = dict(parabolics)
        self.name = name
        self.provenance = provenance

        guard = current_caps().rank_guard
        if len(self.types) > guard:
            raise RankGuardExceeded(len(self.types), guard)
        for label, sub in self.parabolics.items():
            if sub.parent is not self.group.parent:
                raise MixedGroupOperands(f"Parabolic {label!r} lives in another group")
            if validate and not sub.is_subgroup_of(self.group):
                raise MixedGroupOperands(f"Parabolic {label!r} is not a subgroup of the group")

        self._position = {t: k for k, t in enumerate(self.types)}
        self._cache: dict[frozenset[TypeLabel], Subgroup] = {frozenset(): self.group}
        for label, sub in self.parabolics.items():
            self._cache[frozenset([label])] = sub
        self._lock = threading.Lock()

    # --- Type subsets ---

    @property
    def rank(self) -> int:
        return len(self.types)

    @property
    def parent(self) -> FiniteGroup:
        return self.group.parent

    def key(self, J: Iterable[TypeLabel]) -> frozenset[TypeLabel]:
        result = frozenset(J)
        unknown = [t for t in result if t not in self._position]
        if unknown:
            raise KeyError(f"Unknown types {unknown!r} for {self.name or 'system'}")
        return result

    def ordered(self, J: Iterable[TypeLabel]) -> tuple[TypeLabel, ...]:
        """J as a tuple in type order."""
        return tuple(sorted(self.key(J), key=self._position.__getitem__))

    def complement(self, J: Iterable[TypeLabel]) -> tuple[TypeLabel, ...]:
        chosen = self.key(J)
        return tuple(t for t in self.types if t not in chosen)

    def subsets(
        self, min_size: int = 0, max_size: int | None = None, within: Iterable[TypeLabel] | None = None
    ) -> Iterator[tuple[TypeLabel, ...]]:
        """Subsets by increasing size, then lexicographically by type position."""
        pool = self.types if within is None else self.ordered(within)
        top = len(pool) if max_size is None else min(max_size, len(pool))
        for size in range(min_size, top + 1):
            yield from itertools.combinations(pool, size)

    # --- Parabolics ---

    def parabolic(self, J: Iterable[TypeLabel]) -> Subgroup:
        """G_J, the intersection of the G_j for j in J."""
        key = self.key(J)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        ordered = self.ordered(key)
        result = intersect(self.parabolic(ordered[:-1]), self.parabolics[ordered[-1]])
        with self._lock:
            return self._cache.setdefault(key, result)

    def minimal_parabolic(self, i: TypeLabel) -> Subgroup:
        """G^i = G_{I minus i}."""
        return self.parabolic(t for t in self.types if t != i)

    def borel(self) -> Subgroup:
        return self.parabolic(self.types)

    def index(self, i: TypeLabel) -> int:
        return self.group.order() // self.parabolics[i].order()

    def relabeled(self, mapping: Mapping[TypeLabel, TypeLabel]) -> CosetSystem:
        return CosetSystem(
            self.group,
            {mapping.get(t, t): self.parabolics[t] for t in self.types},
            name=self.name,
            validate=False,
        )

    def __repr__(self) -> str:
        return f"CosetSystem({self.name or 'unnamed'}, types={list(self.types)})"


def parabolic(sys: CosetSystem, J: Iterable[TypeLabel]) -> Subgroup:
    return sys.parabolic(J)


def borel_index(sys: CosetSystem) -> int:
    """[G : G_I]; the geometry is finite exactly when this is."""
    return sys.group.order() // sys.borel().order()


def residue_system(sys: CosetSystem, J: Iterable[TypeLabel]) -> CosetSystem:
    """The system over I minus J on G_J with parabolics G_{J+i}."""
    key = sys.key(J)
    if len(key) == sys.rank and sys.rank > 0:
        raise InputError("Residue type set must be a proper subset of the types")
    if not key:
        return sys
    ordered = sys.ordered(key)
    rest = sys.complement(key)
    return CosetSystem(
        sys.parabolic(key),
        {i: sys.parabolic((*ordered, i)) for i in rest},
        name=f"{sys.name or 'system'}|{','.join(map(str, ordered))}",
        validate=False,
    )


def normalize_by_borel(sys: CosetSystem) -> CosetSystem:
    """Quotient by the Borel subgroup when it is normal.

    The group acts on the cosets of G_I; since G_I is the kernel, the image
    is G/G_I and the parabolics are rebuilt from the images of their
    generators.

    Raises:
        NotNormal: When some conjugate of a Borel generator leaves G_I.
    """
    borel = sys.borel()
    if borel.is_trivial() or borel.order() == 1:
        return sys
    parent = sys.parent
    for g in sys.group.generators:
        for b in borel.generators:
            if not borel.contains(parent.conjugate(b, g)):
                raise NotNormal(f"Borel subgroup of {sys.name or 'system'} is not normal")
    quotient, image = coset_action(sys.group, borel)
    parabolics = {
        t: Subgroup(quotient, [image(g) for g in sys.parabolics[t].generators])
        for t in sys.types
    }
    logger.info(
        "Normalized %s by its Borel subgroup: |G| %d -> %d",
        sys.name or "system",
        sys.group.order(),
        quotient.order(),
    )
    return CosetSystem(quotient, parabolics, name=f"{sys.name or 'system'}/Borel")
