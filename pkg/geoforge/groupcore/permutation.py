"""Permutations acting on the right of the points 1..n.

``p * q`` applies ``p`` first and then ``q``, so ``x^(pq) = (x^p)^q``. Cycle
notation is 1-based; the internal array form is 0-based.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence

from sympy.combinatorics import Permutation as SympyPermutation

from geoforge.common.errors import (
    DegreeMismatch,
    MalformedCycle,
    PointOutOfRange,
    RepeatedPointWithinCycle,
)


class Permutation:
    """An immutable permutation of {1..degree}."""

    __slots__ = ("_af", "_hash")

    def __init__(self, images: Sequence[int]) -> None:
        """Build from 1-based images: ``images[p-1]`` is the image of ``p``."""
        degree = len(images)
        if degree == 0:
            raise ValueError("Permutation degree must be positive")
        af = tuple(int(x) - 1 for x in images)
        if sorted(af) != list(range(degree)):
            raise ValueError(f"Images {list(images)} are not a bijection on 1..{degree}")
        self._af = af
        self._hash = hash(af)

    @classmethod
    def _from_af(cls, af: tuple[int, ...]) -> Permutation:
        perm = cls.__new__(cls)
        perm._af = af
        perm._hash = hash(af)
        return perm

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._from_af(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Product of the cycles, composed left to right."""
        result = cls.identity(degree)
        for cycle in cycles:
            result = result * _single_cycle(cycle, degree)
        return result

    # --- Accessors ---

    @property
    def degree(self) -> int:
        return len(self._af)

    @property
    def array_form(self) -> tuple[int, ...]:
        return self._af

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._af)

    def image(self, point: int) -> int:
        if not 1 <= point <= len(self._af):
            raise PointOutOfRange(point, len(self._af))
        return self._af[point - 1] + 1

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._af))

    # --- Arithmetic ---

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other._af) != len(self._af):
            raise DegreeMismatch(f"Degrees {self.degree} and {other.degree} differ")
        return Permutation._from_af(tuple(map(other._af.__getitem__, self._af)))

    def inverse(self) -> Permutation:
        inv = [0] * len(self._af)
        for i, x in enumerate(self._af):
            inv[x] = i
        return Permutation._from_af(tuple(inv))

    __invert__ = inverse

    def __pow__(self, exponent: int) -> Permutation:
        base = self if exponent >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def conjugate_by(self, g: Permutation) -> Permutation:
        """``g^-1 * self * g``."""
        return g.inverse() * self * g

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = [False] * len(self._af)
        result = []
        for start in range(len(self._af)):
            if seen[start] or self._af[start] == start:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point + 1)
                point = self._af[point]
            result.append(tuple(cycle))
        return result

    def order(self) -> int:
        return int(self.to_sympy().order())

    def to_sympy(self) -> SympyPermutation:
        return SympyPermutation(list(self._af))

    # --- Comparison and display ---

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._af == other._af

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return (len(self._af), self._af) < (len(other._af), other._af)

    def __le__(self, other: Permutation) -> bool:
        return self == other or self < other

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "e"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self})"

    def to_json(self) -> str:
        return str(self)


def _single_cycle(cycle: Sequence[int], degree: int) -> Permutation:
    af = list(range(degree))
    seen: set[int] = set()
    for point in cycle:
        if not 1 <= point <= degree:
            raise PointOutOfRange(point, degree)
        if point in seen:
            raise RepeatedPointWithinCycle(point)
        seen.add(point)
    for a, b in zip(cycle, [*cycle[1:], cycle[0]], strict=True):
        af[a - 1] = b - 1
    return Permutation._from_af(tuple(af))


_CYCLE = re.compile(r"\(\s*(\d+(?:\s*,\s*\d+)+)\s*\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(1,4)(2,3)"`` or ``"e"``.

    Args:
        text: ``"e"`` or one or more cycles; cycles compose left to right.
        degree: Number of points.

    Returns:
        The product of the cycles.
    """
    stripped = text.strip()
    if stripped == "e":
        return Permutation.identity(degree)
    if not stripped:
        raise MalformedCycle("Empty permutation text")

    cycles: list[list[int]] = []
    pos = 0
    while pos < len(stripped):
        if stripped[pos].isspace():
            pos += 1
            continue
        match = _CYCLE.match(stripped, pos)
        if match is None:
            raise MalformedCycle(f"Malformed cycle at offset {pos} in {text!r}")
        cycles.append([int(x) for x in match.group(1).split(",")])
        pos = match.end()
    return Permutation.from_cycles(cycles, degree)
