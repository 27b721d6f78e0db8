"""Built-in families of string C-groups on 2r points.

All families share rho_i = (2i-1, 2i+1)(2i, 2i+2) for 1 <= i < r, which
permute the r blocks {2w-1, 2w} like the transpositions (w, w+1). They
differ in rho_0 and in whether rho_i is multiplied by the central element
z = (1,2)(3,4)...(2r-1,2r).

Family ids and the descriptive aliases also accepted:

- ``T9-1`` (``all-toggles``): rho_0 is z
- ``T5-13`` (``first-toggle``): rho_0 is (1,2)
- ``T5-14`` (``tail-toggles``): rho_0 toggles every block but the first
- ``T9-2``, ``T5-15``, ``T5-16``: the same three with the central factor
  on rho_1..rho_{r-1} (aliases carry a ``-z`` suffix)
"""

from __future__ import annotations

from collections.abc import Callable

from geoforge.cgroups.generators import GeneratorSystem
from geoforge.common.errors import RankTooSmall, UnknownFamily
from geoforge.groupcore.permutation import Permutation


def _block_swap(i: int, degree: int) -> Permutation:
    return Permutation.from_cycles([(2 * i - 1, 2 * i + 1), (2 * i, 2 * i + 2)], degree)


def _toggles(blocks: range, degree: int) -> Permutation:
    return Permutation.from_cycles([(2 * w - 1, 2 * w) for w in blocks], degree)


def _family(first: Callable[[int], Permutation], central: bool) -> Callable[[int], list[Permutation]]:
    def build(r: int) -> list[Permutation]:
        degree = 2 * r
        z = _toggles(range(1, r + 1), degree)
        rest = [_block_swap(i, degree) for i in range(1, r)]
        if central:
            rest = [rho * z for rho in rest]
        return [first(r), *rest]

    return build


FAMILIES: dict[str, Callable[[int], list[Permutation]]] = {
    "T9-1": _family(lambda r: _toggles(range(1, r + 1), 2 * r), central=False),
    "T9-2": _family(lambda r: _toggles(range(1, r + 1), 2 * r), central=True),
    "T5-13": _family(lambda r: _toggles(range(1, 2), 2 * r), central=False),
    "T5-14": _family(lambda r: _toggles(range(2, r + 1), 2 * r), central=False),
    "T5-15": _family(lambda r: _toggles(range(1, 2), 2 * r), central=True),
    "T5-16": _family(lambda r: _toggles(range(2, r + 1), 2 * r), central=True),
}

FAMILY_ALIASES: dict[str, str] = {
    "all-toggles": "T9-1",
    "all-toggles-z": "T9-2",
    "first-toggle": "T5-13",
    "tail-toggles": "T5-14",
    "first-toggle-z": "T5-15",
    "tail-toggles-z": "T5-16",
}


def builtin_family(family: str, r: int) -> GeneratorSystem:
    """Generators of a built-in family at rank r (degree 2r).

    ``family`` is a key of ``FAMILIES`` or of ``FAMILY_ALIASES``; the system
    is named after the canonical id.

    Raises:
        UnknownFamily: For an id outside both tables.
        RankTooSmall: For r < 3.
    """
    family = FAMILY_ALIASES.get(family, family)
    if family not in FAMILIES:
        known = ", ".join([*FAMILIES, *FAMILY_ALIASES])
        raise UnknownFamily(f"Unknown family {family!r}; known: {known}")
    if r < 3:
        raise RankTooSmall(f"Family {family} needs rank at least 3, got {r}")
    return GeneratorSystem.from_permutations(FAMILIES[family](r), name=f"{family}(r={r})")
