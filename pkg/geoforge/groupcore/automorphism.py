"""Homomorphisms defined by generator images, validated by breadth-first search."""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from geoforge.common.config import current_caps
from geoforge.common.errors import CapExceeded, NotAHomomorphism, NotBijective, UnresolvedReference
from geoforge.groupcore.groups import Element, FiniteGroup

logger = logging.getLogger(__name__)


def extend_homomorphism(
    generators: Sequence[Element],
    images: Sequence[Any],
    multiply: Callable[[Any, Any], Any],
    identity: Element,
    target_multiply: Callable[[Any, Any], Any],
    target_identity: Any,
    *,
    labels: Sequence[Any] | None = None,
    cap: int | None = None,
) -> dict[Element, Any]:
    """Extend generator images to the whole group, checking every Cayley edge.

    Assigns f(e) = e and f(g*s) = f(g)*f(s) along a breadth-first walk. Each
    edge g -> g*s is checked once; when g*s already has an image that
    disagrees, the images do not define a homomorphism.

    Raises:
        NotAHomomorphism: With the witness (g, generator label, g*s).
        CapExceeded: When the source group is larger than the cap.
    """
    limit = cap if cap is not None else current_caps().closure
    names = list(labels) if labels is not None else list(range(len(generators)))
    f: dict[Element, Any] = {identity: target_identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            fx = f[x]
            for name, s, t in zip(names, generators, images, strict=True):
                y = multiply(x, s)
                fy = target_multiply(fx, t)
                known = f.get(y)
                if known is None:
                    f[y] = fy
                    next_frontier.append(y)
                    if len(f) > limit:
                        raise CapExceeded(limit, len(f), "homomorphism extension")
                elif known != fy:
                    raise NotAHomomorphism((x, name, y))
        frontier = next_frontier
    return f


@dataclass(eq=False)
class Automorphism:
    """A validated automorphism of a finite group, stored as a full table."""

    group: FiniteGroup
    images: dict[str, Element]
    mapping: dict[Element, Element]
    inner_witness: Element | None = None
    inner_searched: bool = False

    def __call__(self, x: Element) -> Element:
        return self.mapping[x]

    @property
    def is_inner(self) -> bool | None:
        """True/False after an inner-witness search, None when it was skipped."""
        if not self.inner_searched:
            return None
        return self.inner_witness is not None

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.mapping.items())

    def then(self, other: Automorphism) -> Automorphism:
        """Apply ``self`` first and ``other`` second."""
        mapping = {x: other.mapping[y] for x, y in self.mapping.items()}
        images = {label: mapping[g] for label, g in self.group.generators.items()}
        return Automorphism(self.group, images, mapping)

    def to_json(self) -> dict[str, Any]:
        return {
            "images": {k: str(v) for k, v in self.images.items()},
            "inner": self.is_inner,
            "witness": None if self.inner_witness is None else str(self.inner_witness),
        }


def automorphism_from_images(
    G: FiniteGroup,
    images: Mapping[str, Element],
    *,
    find_inner: bool = True,
    cap: int | None = None,
) -> Automorphism:
    """Validate generator images as an automorphism of G.

    Args:
        G: The group; ``images`` is keyed by its generator labels.
        images: Image of every generator.
        find_inner: Search for c with c^-1 s c = f(s) for every generator s.
        cap: Closure cap (defaults to the active caps).

    Returns:
        The automorphism, with its inner witness when one was found.
    """
    for label in images:
        if label not in G.generators:
            raise UnresolvedReference("generator", label)
    missing = [label for label in G.generators if label not in images]
    if missing:
        raise UnresolvedReference("generator image", missing[0])
    labels = list(G.generators)
    gens = [G.generators[label] for label in labels]
    targets = [images[label] for label in labels]
    G.check(*targets)

    mapping = extend_homomorphism(
        gens,
        targets,
        G.multiply,
        G.identity(),
        G.multiply,
        G.identity(),
        labels=labels,
        cap=cap,
    )
    if len(set(mapping.values())) != len(mapping):
        raise NotBijective(f"Images {images} collapse elements of {G.name or G}")

    auto = Automorphism(G, dict(zip(labels, targets, strict=True)), mapping)
    if find_inner:
        auto.inner_searched = True
        for c in sorted(mapping):
            if all(G.conjugate(s, c) == t for s, t in zip(gens, targets, strict=True)):
                auto.inner_witness = c
                break
    logger.debug("Validated automorphism on %d elements (inner=%s)", len(mapping), auto.is_inner)
    return auto
