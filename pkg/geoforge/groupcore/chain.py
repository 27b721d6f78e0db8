"""Stabilizer chains for permutation groups, backed by sympy's Schreier-Sims."""

from __future__ import annotations

import logging
from collections.abc import Sequence

from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

from geoforge.groupcore.permutation import Permutation

logger = logging.getLogger(__name__)


class StabilizerChain:
    """Base and order of a permutation group, with membership by sifting.

    The deterministic Schreier-Sims algorithm picks base points as the first
    points moved by the generators, so two chains built from the same
    generator list are identical.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int) -> None:
        self.degree = degree
        sym_gens = [g.to_sympy() for g in generators if not g.is_identity()]
        if not sym_gens:
            sym_gens = [SympyPermutation(list(range(degree)))]
        self._group = PermutationGroup(sym_gens)
        self._group.schreier_sims()
        self.base: tuple[int, ...] = tuple(p + 1 for p in self._group.base)
        self._order = int(self._group.order())
        logger.debug("Stabilizer chain: base %s, order %d", self.base, self._order)

    def order(self) -> int:
        return self._order

    def contains(self, g: Permutation) -> bool:
        """Sift ``g`` through the chain."""
        if g.degree != self.degree:
            return False
        return bool(self._group.contains(g.to_sympy()))
