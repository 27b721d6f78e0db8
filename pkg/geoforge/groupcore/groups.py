"""Finite groups: permutation groups, direct products and semidirect products.

Every group exposes the same black-box interface (identity, multiply,
invert, named generators) so that subgroups, cosets and coset systems never
need to know which representation they are working in.
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping, Sequence
from typing import TYPE_CHECKING, Any, NamedTuple

from geoforge.common.config import current_caps
from geoforge.common.errors import CapExceeded, DegreeMismatch, MixedGroupOperands
from geoforge.groupcore.permutation import Permutation, parse_permutation

if TYPE_CHECKING:
    from geoforge.groupcore.subgroups import Subgroup

logger = logging.getLogger(__name__)

Element = Hashable


class ElementSet(frozenset):
    """A finite set of group elements that iterates in sorted order."""

    def __iter__(self) -> Iterator[Any]:
        return iter(self.sorted())

    def sorted(self) -> list[Any]:
        cached = self.__dict__.get("_sorted")
        if cached is None:
            cached = sorted(frozenset.__iter__(self))
            self.__dict__["_sorted"] = cached
        return cached

    def to_json(self) -> list[Any]:
        return [_element_json(x) for x in self.sorted()]


def _element_json(x: Any) -> Any:
    to_json = getattr(x, "to_json", None)
    return to_json() if callable(to_json) else str(x)


def closure(
    generators: Sequence[Element],
    multiply: Callable[[Any, Any], Any],
    identity: Element,
    cap: int | None = None,
) -> ElementSet:
    """All products of the generators, by breadth-first right multiplication."""
    limit = cap if cap is not None else current_caps().closure
    seen = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            for g in generators:
                y = multiply(x, g)
                if y not in seen:
                    seen.add(y)
                    next_frontier.append(y)
                    if len(seen) > limit:
                        raise CapExceeded(limit, len(seen), "closure")
        frontier = next_frontier
    return ElementSet(seen)


class FiniteGroup(ABC):
    """Black-box finite group with named generators."""

    is_permutation: bool = False

    def __init__(self, generators: Mapping[str, Element], name: str = "") -> None:
        self.generators: dict[str, Element] = dict(generators)
        self.name = name
        self._whole: Subgroup | None = None

    @abstractmethod
    def identity(self) -> Element: ...

    @abstractmethod
    def multiply(self, x: Element, y: Element) -> Element: ...

    @abstractmethod
    def invert(self, x: Element) -> Element: ...

    @abstractmethod
    def owns(self, x: Element) -> bool:
        """True when ``x`` has this group's element shape."""

    def check(self, *elements: Element) -> None:
        for x in elements:
            if not self.owns(x):
                raise MixedGroupOperands(f"{x!r} is not an element of {self.name or self}")

    def product(self, *elements: Element) -> Element:
        result = self.identity()
        for x in elements:
            result = self.multiply(result, x)
        return result

    def power(self, x: Element, exponent: int) -> Element:
        base = x if exponent >= 0 else self.invert(x)
        result = self.identity()
        for _ in range(abs(exponent)):
            result = self.multiply(result, base)
        return result

    def conjugate(self, x: Element, g: Element) -> Element:
        """``g^-1 x g``."""
        return self.product(self.invert(g), x, g)

    def element_order(self, x: Element) -> int:
        identity = self.identity()
        limit = current_caps().closure
        power = x
        k = 1
        while power != identity:
            power = self.multiply(power, x)
            k += 1
            if k > limit:
                raise CapExceeded(limit, k, "element order")
        return k

    def whole(self) -> Subgroup:
        """The group as a subgroup of itself."""
        if self._whole is None:
            from geoforge.groupcore.subgroups import Subgroup

            self._whole = Subgroup(self, list(self.generators.values()), name=self.name)
        return self._whole

    def order(self) -> int:
        return self.whole().order()

    def elements(self) -> ElementSet:
        return self.whole().elements()

    def label_of(self, x: Element) -> str | None:
        for label, g in self.generators.items():
            if g == x:
                return label
        return None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or ', '.join(self.generators)})"


class PermGroup(FiniteGroup):
    """A permutation group of a fixed degree."""

    is_permutation = True

    def __init__(
        self,
        generators: Mapping[str, Permutation] | Sequence[Permutation],
        degree: int | None = None,
        name: str = "",
    ) -> None:
        if not isinstance(generators, Mapping):
            generators = {f"g{i}": g for i, g in enumerate(generators)}
        if degree is None:
            if not generators:
                raise ValueError("Degree is required for a group without generators")
            degree = next(iter(generators.values())).degree
        for label, g in generators.items():
            if g.degree != degree:
                raise DegreeMismatch(f"Generator {label} has degree {g.degree}, expected {degree}")
        super().__init__(generators, name)
        self.degree = degree

    @classmethod
    def from_cycles(cls, generators: Mapping[str, str], degree: int, name: str = "") -> PermGroup:
        return cls({k: parse_permutation(v, degree) for k, v in generators.items()}, degree, name)

    @classmethod
    def symmetric(cls, n: int) -> PermGroup:
        gens = {f"s{i}": Permutation.from_cycles([(i, i + 1)], n) for i in range(1, n)}
        return cls(gens, n, name=f"Sym({n})")

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def multiply(self, x: Permutation, y: Permutation) -> Permutation:
        return x * y

    def invert(self, x: Permutation) -> Permutation:
        return x.inverse()

    def owns(self, x: Element) -> bool:
        return isinstance(x, Permutation) and x.degree == self.degree

    def element_order(self, x: Permutation) -> int:
        return x.order()


class TupleElement(tuple):
    """Element of a direct product: one component per factor."""

    def __repr__(self) -> str:
        return "<" + ", ".join(str(x) for x in self) + ">"

    def to_json(self) -> list[Any]:
        return [_element_json(x) for x in self]


class ProductGroup(FiniteGroup):
    """Direct product of finitely many groups, multiplied componentwise."""

    def __init__(
        self,
        factors: Sequence[FiniteGroup],
        labels: Sequence[Any] | None = None,
        name: str = "",
    ) -> None:
        self.factors = tuple(factors)
        self.labels = tuple(labels) if labels is not None else tuple(range(len(self.factors)))
        gens = {
            f"{label}.{g_label}": self.embed(k, g)
            for k, (label, factor) in enumerate(zip(self.labels, self.factors, strict=True))
            for g_label, g in factor.generators.items()
        }
        super().__init__(gens, name)

    def identity(self) -> TupleElement:
        return TupleElement(f.identity() for f in self.factors)

    def multiply(self, x: TupleElement, y: TupleElement) -> TupleElement:
        return TupleElement(
            f.multiply(a, b) for f, a, b in zip(self.factors, x, y, strict=True)
        )

    def invert(self, x: TupleElement) -> TupleElement:
        return TupleElement(f.invert(a) for f, a in zip(self.factors, x, strict=True))

    def owns(self, x: Element) -> bool:
        return (
            isinstance(x, TupleElement)
            and len(x) == len(self.factors)
            and all(f.owns(a) for f, a in zip(self.factors, x, strict=True))
        )

    def embed(self, index: int, element: Element) -> TupleElement:
        """The element with ``element`` at ``index`` and identities elsewhere."""
        parts = [f.identity() for f in self.factors]
        parts[index] = element
        return TupleElement(parts)

    def element_order(self, x: TupleElement) -> int:
        result = 1
        for f, a in zip(self.factors, x, strict=True):
            result = math.lcm(result, f.element_order(a))
        return result


class Pair(NamedTuple):
    """Element (a, b) of a semidirect product A x| B."""

    a: Any
    b: Any

    def to_json(self) -> list[Any]:
        return [_element_json(self.a), _element_json(self.b)]

    def __str__(self) -> str:
        return f"({self.a}, {self.b})"


class SemidirectGroup(FiniteGroup):
    """A x| B with (a1, b1)(a2, b2) = (a1 * act(b1, a2), b1 * b2)."""

    def __init__(
        self,
        normal: FiniteGroup,
        acting: FiniteGroup,
        act: Callable[[Any, Any], Any],
        name: str = "",
    ) -> None:
        self.normal = normal
        self.acting = acting
        self._act = act
        gens: dict[str, Pair] = {}
        for label, a in normal.generators.items():
            gens[f"A.{label}"] = self.embed_normal(a)
        for label, b in acting.generators.items():
            gens[f"B.{label}"] = self.embed_acting(b)
        super().__init__(gens, name)

    def identity(self) -> Pair:
        return Pair(self.normal.identity(), self.acting.identity())

    def multiply(self, x: Pair, y: Pair) -> Pair:
        return Pair(
            self.normal.multiply(x.a, self._act(x.b, y.a)),
            self.acting.multiply(x.b, y.b),
        )

    def invert(self, x: Pair) -> Pair:
        b_inv = self.acting.invert(x.b)
        return Pair(self._act(b_inv, self.normal.invert(x.a)), b_inv)

    def owns(self, x: Element) -> bool:
        return isinstance(x, Pair) and self.normal.owns(x.a) and self.acting.owns(x.b)

    def embed_normal(self, a: Element) -> Pair:
        return Pair(a, self.acting.identity())

    def embed_acting(self, b: Element) -> Pair:
        return Pair(self.normal.identity(), b)

    def act(self, b: Element, a: Element) -> Element:
        return self._act(b, a)


def unique_generators(elements: Iterable[Element], identity: Element) -> list[Element]:
    """Drop duplicates and the identity, keeping first-seen order."""
    result: list[Element] = []
    seen: set[Element] = set()
    for x in elements:
        if x != identity and x not in seen:
            seen.add(x)
            result.append(x)
    return result


# --- Element arithmetic ---


def multiply(g: Element, h: Element, group: FiniteGroup | None = None) -> Element:
    """Product ``g*h`` (apply g, then h)."""
    if group is not None:
        group.check(g, h)
        return group.multiply(g, h)
    if isinstance(g, Permutation) and isinstance(h, Permutation):
        if g.degree != h.degree:
            raise MixedGroupOperands(f"Degrees {g.degree} and {h.degree} differ")
        return g * h
    raise MixedGroupOperands("Non-permutation elements need their group")


def invert(g: Element, group: FiniteGroup | None = None) -> Element:
    if group is not None:
        group.check(g)
        return group.invert(g)
    if isinstance(g, Permutation):
        return g.inverse()
    raise MixedGroupOperands("Non-permutation elements need their group")


def element_order(g: Element, group: FiniteGroup | None = None) -> int:
    if group is not None:
        group.check(g)
        return group.element_order(g)
    if isinstance(g, Permutation):
        return g.order()
    raise MixedGroupOperands("Non-permutation elements need their group")


def group_order(group: FiniteGroup) -> int:
    return group.order()
