"""Exception hierarchy shared by all geoforge modules.

Every error carries an ``exit_code`` so the CLI can map it onto the
0/1/2/3 contract without a lookup table:

- 2: malformed input (parsing, references, labels, configuration)
- 1: a construction that cannot be carried out on valid input
- 3: a configured resource cap was hit
"""

from __future__ import annotations

from typing import Any


class GeoforgeError(Exception):
    """Base class for all geoforge errors."""

    exit_code: int = 1


# --- Input errors ---


class InputError(GeoforgeError):
    exit_code = 2


class ConfigError(InputError):
    """Invalid cap or settings value."""


class ParseError(InputError):
    """Spec or literal text that does not parse."""

    def __init__(self, message: str, line: int = 0, col: int = 0) -> None:
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


class UnresolvedReference(InputError):
    def __init__(self, kind: str, name: str) -> None:
        super().__init__(f"Unknown {kind} {name!r}")
        self.kind = kind
        self.name = name


class PointOutOfRange(InputError):
    def __init__(self, point: int, degree: int) -> None:
        super().__init__(f"Point {point} outside 1..{degree}")
        self.point = point
        self.degree = degree


class MalformedCycle(InputError):
    pass


class RepeatedPointWithinCycle(InputError):
    def __init__(self, point: int) -> None:
        super().__init__(f"Point {point} repeated within one cycle")
        self.point = point


class MixedGroupOperands(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class NotAnInvolution(InputError):
    def __init__(self, label: Any) -> None:
        super().__init__(f"Generator {label!r} is not an involution")
        self.label = label


class NotAMatching(InputError):
    def __init__(self, label: Any, vertex: int) -> None:
        super().__init__(f"Edges labelled {label!r} meet twice at vertex {vertex}")
        self.label = label
        self.vertex = vertex


class UnknownFamily(InputError):
    pass


class RankTooSmall(InputError):
    pass


class TypeLabelCollision(InputError):
    def __init__(self, labels: Any) -> None:
        super().__init__(f"Type labels used twice: {labels!r}")
        self.labels = labels


class EmptyTypeSet(InputError):
    pass


# --- Construction errors ---


class NotAHomomorphism(GeoforgeError):
    def __init__(self, witness: tuple[Any, Any, Any]) -> None:
        super().__init__(f"Images are inconsistent: element {witness[0]} by {witness[1]!r}")
        self.witness = witness


class NotBijective(GeoforgeError):
    pass


class NotSelfDual(GeoforgeError):
    pass


class ActionNotValidated(GeoforgeError):
    pass


class NotParabolicPermuting(GeoforgeError):
    def __init__(self, element: Any, type_label: Any) -> None:
        super().__init__(f"{element} does not map parabolic {type_label!r} onto a parabolic")
        self.element = element
        self.type_label = type_label


class NotAdmissible(GeoforgeError):
    pass


class RepNotValid(GeoforgeError):
    def __init__(self, orbit: Any, representative: Any) -> None:
        super().__init__(f"Representative {representative!r} of orbit {orbit!r} fails (IPO)")
        self.orbit = orbit
        self.representative = representative


class NotNormal(GeoforgeError):
    pass


class NotFound(GeoforgeError):
    pass


# --- Resource errors ---


class CapExceeded(GeoforgeError):
    exit_code = 3

    def __init__(self, cap: int, partial: int, what: str = "enumeration") -> None:
        super().__init__(f"{what} exceeded cap {cap} (reached {partial})")
        self.cap = cap
        self.partial = partial
        self.what = what


class RankGuardExceeded(GeoforgeError):
    exit_code = 3

    def __init__(self, rank: int, guard: int) -> None:
        super().__init__(f"Rank {rank} exceeds rank guard {guard}")
        self.rank = rank
        self.guard = guard
