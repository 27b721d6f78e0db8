"""The lamplighter group C2 wr Z on finitely supported lamp configurations.

An element (c, s) has the lamps in c switched on and the lighter at s.
(c1, s1)(c2, s2) = (c1 xor (c2 + s1), s1 + s2).
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from geoforge.common.errors import ParseError


@dataclass(frozen=True, order=True)
class LampConfig:
    """Finite set of lit positions, stored sorted."""

    on: tuple[int, ...] = ()

    @classmethod
    def of(cls, positions: Iterable[int]) -> LampConfig:
        return cls(tuple(sorted(set(positions))))

    def __iter__(self) -> Iterator[int]:
        return iter(self.on)

    def __len__(self) -> int:
        return len(self.on)

    def __contains__(self, position: object) -> bool:
        return position in set(self.on)

    def shifted(self, by: int) -> LampConfig:
        return LampConfig(tuple(p + by for p in self.on))

    def xor(self, other: LampConfig) -> LampConfig:
        return LampConfig.of(set(self.on) ^ set(other.on))

    def toggled(self, position: int) -> LampConfig:
        return self.xor(LampConfig((position,)))

    def without(self, position: int) -> LampConfig:
        return LampConfig(tuple(p for p in self.on if p != position))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.on)) + "}"


@dataclass(frozen=True, order=True)
class LamplighterElement:
    config: LampConfig = LampConfig()
    shift: int = 0

    def __mul__(self, other: LamplighterElement) -> LamplighterElement:
        return ll_mul(self, other)

    def __str__(self) -> str:
        return f"({self.config}, {self.shift})"

    def to_json(self) -> dict[str, object]:
        return {"on": list(self.config.on), "shift": self.shift}


IDENTITY = LamplighterElement()
TOGGLE = LamplighterElement(LampConfig((0,)), 0)
SHIFT = LamplighterElement(LampConfig(), 1)


def ll_mul(x: LamplighterElement, y: LamplighterElement) -> LamplighterElement:
    return LamplighterElement(x.config.xor(y.config.shifted(x.shift)), x.shift + y.shift)


def ll_inv(x: LamplighterElement) -> LamplighterElement:
    return LamplighterElement(x.config.shifted(-x.shift), -x.shift)


def ll_pow(x: LamplighterElement, exponent: int) -> LamplighterElement:
    base = x if exponent >= 0 else ll_inv(x)
    result = IDENTITY
    for _ in range(abs(exponent)):
        result = ll_mul(result, base)
    return result


def ll_word(letters: str) -> LamplighterElement:
    """Evaluate a word in a, t and T (t inverse)."""
    table = {"a": TOGGLE, "t": SHIFT, "T": ll_inv(SHIFT)}
    result = IDENTITY
    for k, letter in enumerate(letters):
        if letter not in table:
            raise ParseError(f"Unknown letter {letter!r}", 1, k + 1)
        result = ll_mul(result, table[letter])
    return result


_LITERAL = re.compile(r"^\s*on=(?P<on>[-\d,\s]*?)\s*(?:shift=(?P<shift>-?\d+))?\s*$")


def parse_lamp_literal(text: str) -> LamplighterElement:
    """Parse ``"on=3,5 shift=0"``; ``shift`` is optional and ``on=`` may be empty."""
    match = _LITERAL.match(text)
    if match is None:
        raise ParseError(f"Expected 'on=<positions> [shift=<n>]', got {text!r}", 1, 1)
    raw = match.group("on").strip()
    positions = []
    for token in filter(None, (t.strip() for t in raw.split(","))):
        try:
            positions.append(int(token))
        except ValueError as exc:
            raise ParseError(f"Bad lamp position {token!r}", 1, text.find(token) + 1) from exc
    shift = int(match.group("shift")) if match.group("shift") else 0
    return LamplighterElement(LampConfig.of(positions), shift)
