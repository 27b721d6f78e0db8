"""Actions of a group B on a group A by automorphisms, and the induced action on types.

An action is a left action: ``apply(b1 * b2, a) == apply(b1, apply(b2, a))``,
which is what the semidirect multiplication (a1 * b1(a2), b1 * b2) needs.
"""

from __future__ import annotations

import itertools
import logging
from abc import ABC, abstractmethod
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any, Literal

from geoforge.common.errors import (
    ActionNotValidated,
    DegreeMismatch,
    MixedGroupOperands,
    NotAHomomorphism,
    NotParabolicPermuting,
    UnresolvedReference,
)
from geoforge.cosetgeom.system import CosetSystem
from geoforge.groupcore.automorphism import automorphism_from_images, extend_homomorphism
from geoforge.groupcore.groups import Element, FiniteGroup, PermGroup, ProductGroup, TupleElement
from geoforge.groupcore.permutation import Permutation
from geoforge.groupcore.subgroups import Subgroup

logger = logging.getLogger(__name__)

TypeLabel = Hashable
Orbit = tuple[TypeLabel, ...]
ValidationLevel = Literal["fast", "exhaustive"]


class ActionSpec(ABC):
    """phi: B -> Aut(A), given on the generators of B."""

    kind: str = "abstract"

    def __init__(self, target: FiniteGroup, actor: FiniteGroup, name: str = "") -> None:
        self.target = target
        self.actor = actor
        self.name = name or self.kind
        self.validated = False
        self.level: ValidationLevel | None = None

    @abstractmethod
    def apply(self, b: Element, a: Element) -> Element:
        """phi(b)(a)."""

    @abstractmethod
    def _validate_exhaustive(self) -> None: ...

    def generator_image(self, b_label: str, a: Element) -> Element:
        return self.apply(self.actor.generators[b_label], a)

    def screen(self) -> tuple[str, str, str] | None:
        """Fast screen: every generator image keeps the orders of generators and their products.

        Returns the first offending (b label, a label, a label) or None.
        """
        a_items = list(self.target.generators.items())
        for b_label in self.actor.generators:
            for (x_label, x), (y_label, y) in itertools.combinations_with_replacement(a_items, 2):
                original = self.target.multiply(x, y) if x_label != y_label else x
                moved = (
                    self.target.multiply(
                        self.generator_image(b_label, x), self.generator_image(b_label, y)
                    )
                    if x_label != y_label
                    else self.generator_image(b_label, x)
                )
                if self.target.element_order(original) != self.target.element_order(moved):
                    return (b_label, x_label, y_label)
        return None

    def validate(self, level: ValidationLevel = "exhaustive") -> ActionSpec:
        """Run the fast screen, then (for ``exhaustive``) the full word-independence check.

        Only the exhaustive level marks the action as usable for products.

        Raises:
            NotAHomomorphism: When the screen or the exhaustive check fails.
        """
        if not self.validated:
            offending = self.screen()
            if offending is not None:
                raise NotAHomomorphism((offending[0], offending[1], offending[2]))
            if level == "exhaustive":
                self._validate_exhaustive()
                self.validated = True
            self.level = level
        logger.debug("Action %s validated at level %s", self.name, self.level)
        return self

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, validated={self.validated})"


class TrivialAction(ActionSpec):
    kind = "trivial"

    def __init__(self, target: FiniteGroup, actor: FiniteGroup, name: str = "") -> None:
        super().__init__(target, actor, name)
        self.validated = True
        self.level = "exhaustive"

    def apply(self, b: Element, a: Element) -> Element:
        return a

    def _validate_exhaustive(self) -> None:
        return None


class ConjugationAction(ActionSpec):
    """phi(b)(a) = b a b^-1 inside a common symmetric group.

    Valid as soon as B normalizes A, which is checked on generators.
    """

    kind = "conjugation"

    def __init__(self, target: PermGroup, actor: PermGroup, name: str = "") -> None:
        super().__init__(target, actor, name)
        if target.degree != actor.degree:
            raise DegreeMismatch(f"Conjugation needs equal degrees, got {target.degree} and {actor.degree}")
        self._validate_exhaustive()
        self.validated = True
        self.level = "exhaustive"

    def apply(self, b: Permutation, a: Permutation) -> Permutation:
        return b * a * b.inverse()

    def _validate_exhaustive(self) -> None:
        whole = self.target.whole()
        for b_label, b in self.actor.generators.items():
            for a_label, a in self.target.generators.items():
                if not whole.contains(self.apply(b, a)):
                    raise ActionNotValidated(
                        f"{b_label} does not normalize the acted-on group (moves {a_label} out)"
                    )


class ImagesAction(ActionSpec):
    """phi given by the images of A's generators under each generator of B."""

    kind = "images"

    def __init__(
        self,
        target: FiniteGroup,
        actor: FiniteGroup,
        images: Mapping[str, Mapping[str, Element]],
        name: str = "",
    ) -> None:
        super().__init__(target, actor, name)
        for b_label in images:
            if b_label not in actor.generators:
                raise UnresolvedReference("acting generator", b_label)
        missing = [b for b in actor.generators if b not in images]
        if missing:
            raise UnresolvedReference("action images for", missing[0])
        self.images = {b: dict(imgs) for b, imgs in images.items()}
        self._maps: dict[tuple, dict[Element, Element]] = {}
        self._table: dict[Element, tuple] = {}

    def generator_image(self, b_label: str, a: Element) -> Element:
        if a in self.target.generators.values():
            return self.images[b_label][self.target.label_of(a)]
        return super().generator_image(b_label, a)

    def apply(self, b: Element, a: Element) -> Element:
        if not self.validated:
            raise ActionNotValidated(f"Action {self.name} must be validated before use")
        return self._maps[self._table[b]][a]

    def _validate_exhaustive(self) -> None:
        a_gens = list(self.target.generators.values())

        def key_of(mapping: Mapping[Element, Element]) -> tuple:
            return tuple(mapping[g] for g in a_gens)

        def remember(mapping: dict[Element, Element]) -> tuple:
            key = key_of(mapping)
            self._maps.setdefault(key, mapping)
            return key

        identity_key = remember({x: x for x in self.target.elements()})
        generator_keys = []
        for b_label in self.actor.generators:
            auto = automorphism_from_images(self.target, self.images[b_label], find_inner=False)
            generator_keys.append(remember(auto.mapping))

        def compose(f_key: tuple, s_key: tuple) -> tuple:
            f, s = self._maps[f_key], self._maps[s_key]
            return remember({x: f[s[x]] for x in s})

        self._table = extend_homomorphism(
            list(self.actor.generators.values()),
            generator_keys,
            self.actor.multiply,
            self.actor.identity(),
            compose,
            identity_key,
            labels=list(self.actor.generators),
        )


class CoordinateAction(ActionSpec):
    """B permutes the coordinates of a direct power: phi(b)(a)[w] = a[w^b]."""

    kind = "coordinate"

    def __init__(
        self,
        target: ProductGroup,
        actor: FiniteGroup,
        omega_images: Mapping[str, Permutation],
        name: str = "",
    ) -> None:
        super().__init__(target, actor, name)
        n = len(target.factors)
        for b_label, sigma in omega_images.items():
            if b_label not in actor.generators:
                raise UnresolvedReference("acting generator", b_label)
            if sigma.degree != n:
                raise DegreeMismatch(f"Coordinate permutation of degree {sigma.degree}, expected {n}")
        missing = [b for b in actor.generators if b not in omega_images]
        if missing:
            raise UnresolvedReference("coordinate image for", missing[0])
        self.omega_images = dict(omega_images)
        self._table: dict[Element, Permutation] = {}

    def permute(self, sigma: Permutation, a: TupleElement) -> TupleElement:
        return TupleElement(a[sigma.image(k + 1) - 1] for k in range(len(a)))

    def generator_image(self, b_label: str, a: Element) -> Element:
        return self.permute(self.omega_images[b_label], a)

    def apply(self, b: Element, a: TupleElement) -> TupleElement:
        if not self.validated:
            raise ActionNotValidated(f"Action {self.name} must be validated before use")
        return self.permute(self._table[b], a)

    def sigma(self, b: Element) -> Permutation:
        return self._table[b]

    def _validate_exhaustive(self) -> None:
        degree = len(self.target.factors)
        self._table = extend_homomorphism(
            list(self.actor.generators.values()),
            [self.omega_images[label] for label in self.actor.generators],
            self.actor.multiply,
            self.actor.identity(),
            lambda p, q: p * q,
            Permutation.identity(degree),
            labels=list(self.actor.generators),
        )


# --- Induced action on types ---


@dataclass
class TypeAction:
    """The permutation action of B on the types of alpha induced by phi."""

    action: ActionSpec
    types: tuple[TypeLabel, ...]
    generator_perms: dict[str, dict[TypeLabel, TypeLabel]]
    table: dict[Element, Permutation] = field(repr=False)
    orbits: tuple[Orbit, ...]

    def image(self, b: Element, t: TypeLabel) -> TypeLabel:
        position = self.types.index(t)
        return self.types[self.table[b].image(position + 1) - 1]

    def orbit_of(self, t: TypeLabel) -> Orbit:
        for orbit in self.orbits:
            if t in orbit:
                return orbit
        raise KeyError(t)

    def orbit_under(self, start: TypeLabel, generators: Iterable[Element]) -> frozenset[TypeLabel]:
        """Orbit of a type under the subgroup generated by ``generators``."""
        gens = list(generators)
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for b in gens:
                u = self.image(b, t)
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return frozenset(seen)

    def to_json(self) -> dict[str, Any]:
        return {
            "orbits": [list(o) for o in self.orbits],
            "generators": {b: {str(k): v for k, v in p.items()} for b, p in self.generator_perms.items()},
        }


def validate_action(action: ActionSpec, alpha: CosetSystem) -> TypeAction:
    """Check that phi permutes the maximal parabolics of alpha and return the type action.

    Raises:
        ActionNotValidated: If ``action`` has not passed exhaustive validation.
        NotParabolicPermuting: With the first (generator, type) whose image
            subgroup is not a maximal parabolic.
    """
    if not action.validated:
        raise ActionNotValidated(f"Action {action.name} must be validated before use")
    if alpha.parent is not action.target:
        raise MixedGroupOperands("The action does not act on this system's group")
    types = alpha.types
    position = {t: k for k, t in enumerate(types)}
    generator_perms: dict[str, dict[TypeLabel, TypeLabel]] = {}
    perms = []
    for b_label, b in action.actor.generators.items():
        mapping: dict[TypeLabel, TypeLabel] = {}
        for t in types:
            moved = Subgroup(alpha.parent, [action.apply(b, x) for x in alpha.parabolics[t].generators])
            match = next(
                (
                    u
                    for u in types
                    if u not in mapping.values() and moved.same_as(alpha.parabolics[u])
                ),
                None,
            )
            if match is None:
                raise NotParabolicPermuting(b_label, t)
            mapping[t] = match
        generator_perms[b_label] = mapping
        perms.append(Permutation([position[mapping[t]] + 1 for t in types]))

    identity = Permutation.identity(len(types)) if types else None
    if identity is None:
        table: dict[Element, Permutation] = {}
    else:
        table = extend_homomorphism(
            list(action.actor.generators.values()),
            perms,
            action.actor.multiply,
            action.actor.identity(),
            lambda p, q: q * p,
            identity,
            labels=list(action.actor.generators),
        )

    parent = {t: t for t in types}

    def find(t: TypeLabel) -> TypeLabel:
        while parent[t] != t:
            t = parent[t]
        return t

    for mapping in generator_perms.values():
        for t, u in mapping.items():
            rt, ru = find(t), find(u)
            if rt != ru:
                first, second = sorted((rt, ru), key=position.__getitem__)
                parent[second] = first
    groups: dict[TypeLabel, list[TypeLabel]] = {}
    for t in types:
        groups.setdefault(find(t), []).append(t)
    orbits = tuple(
        tuple(members) for members in sorted(groups.values(), key=lambda m: position[m[0]])
    )
    logger.info("Type action of %s: orbits %s", action.name, [list(o) for o in orbits])
    return TypeAction(action, types, generator_perms, table, orbits)
