"""Twisting a self-dual string C-group by its generator-reversing duality."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any

from geoforge.cgroups.generators import (
    CoxeterDiagram,
    GeneratorSystem,
    cgroup_system,
    coxeter_diagram,
)
from geoforge.common.errors import NotAHomomorphism, NotBijective, NotSelfDual
from geoforge.cosetgeom.system import CosetSystem
from geoforge.groupcore.automorphism import Automorphism, automorphism_from_images
from geoforge.groupcore.groups import PermGroup
from geoforge.groupcore.permutation import Permutation
from geoforge.groupcore.subgroups import Subgroup
from geoforge.ops.actions import ImagesAction, Orbit
from geoforge.ops.twisting import RepChoice, representative_choices, twist, twist_provenance

logger = logging.getLogger(__name__)

DUALITY_TYPE = "tau"


@dataclass
class SelfDualTwist:
    system: CosetSystem
    duality: Automorphism
    is_inner: bool | None
    rank: int
    generators: GeneratorSystem
    diagram: CoxeterDiagram
    reps: dict[Orbit, int]

    @property
    def linear(self) -> bool:
        return self.diagram.linear

    def to_json(self) -> dict[str, Any]:
        return {
            "rank": self.rank,
            "order": self.system.group.order(),
            "reps": {str(list(L)): F for L, F in self.reps.items()},
            "inner": self.is_inner,
            "diagram": self.diagram.to_json(),
            "path": self.diagram.path_labels(),
        }


def _duality_setup(S: GeneratorSystem) -> tuple[CosetSystem, CosetSystem, ImagesAction, Automorphism]:
    if not isinstance(S.group, PermGroup):
        raise TypeError("Self-dual twisting needs a permutation generator system")
    n = S.rank
    group = PermGroup(dict(S.items()), S.group.degree, name=S.name)
    images = {S.labels[i]: S.generators[n - 1 - i] for i in range(n)}
    try:
        duality = automorphism_from_images(group, images)
    except (NotAHomomorphism, NotBijective) as exc:
        raise NotSelfDual(f"Generator reversal is not an automorphism of {S.name or 'S'}") from exc

    alpha = cgroup_system(GeneratorSystem(group, dict(S.items()), name=S.name))
    acting = PermGroup({DUALITY_TYPE: Permutation.from_cycles([(1, 2)], 2)}, 2, name="C2")
    beta = CosetSystem(acting, {DUALITY_TYPE: Subgroup.trivial(acting)}, name="duality")
    action = ImagesAction(group, acting, {DUALITY_TYPE: images}, name="duality").validate()
    return alpha, beta, action, duality


def _build(
    S: GeneratorSystem,
    alpha: CosetSystem,
    beta: CosetSystem,
    action: ImagesAction,
    duality: Automorphism,
    reps: RepChoice,
) -> SelfDualTwist:
    system = twist(alpha, beta, action, reps, name=f"selfdual({S.name or 'S'})")
    provenance = twist_provenance(system)
    group = provenance.group
    chosen = provenance.orbit_data.representatives
    gens = {f"r{F}": group.embed_normal(alpha.parent.generators[S.labels[F]]) for F in chosen.values()}
    gens[DUALITY_TYPE] = group.embed_acting(beta.parent.generators[DUALITY_TYPE])
    generators = GeneratorSystem(group, gens, name=system.name)
    return SelfDualTwist(
        system=system,
        duality=duality,
        is_inner=duality.is_inner,
        rank=system.rank,
        generators=generators,
        diagram=coxeter_diagram(generators),
        reps=chosen,
    )


def self_dual_twist(S: GeneratorSystem, reps: RepChoice = None) -> SelfDualTwist:
    """Twist the coset system of S by <tau>, tau(rho_i) = rho_{n-1-i}.

    The result has rank ceil(n/2) + 1; its generators are the chosen orbit
    representatives rho_F together with tau.

    Raises:
        NotSelfDual: When generator reversal is not an automorphism.
        NotAdmissible: When some orbit has no valid representative.
    """
    alpha, beta, action, duality = _duality_setup(S)
    result = _build(S, alpha, beta, action, duality, reps)
    expected = math.ceil(S.rank / 2) + 1
    if result.rank != expected:
        logger.warning("Self-dual twist of rank %d, expected %d", result.rank, expected)
    logger.info(
        "Self-dual twist of %s: rank %d, diagram %s",
        S.name or "S",
        result.rank,
        result.diagram.path_labels() or "non-linear",
    )
    return result


def self_dual_choices(S: GeneratorSystem) -> list[SelfDualTwist]:
    """The self-dual twist for every admissible choice of representatives."""
    alpha, beta, action, duality = _duality_setup(S)
    return [
        _build(S, alpha, beta, action, duality, choice)
        for choice in representative_choices(alpha, beta, action)
    ]
