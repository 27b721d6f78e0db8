"""Wreath products of coset systems: twisting a direct power by coordinate permutation."""

from __future__ import annotations

import logging
from collections.abc import Hashable, Mapping

from geoforge.common.errors import DegreeMismatch
from geoforge.cosetgeom.system import CosetSystem
from geoforge.groupcore.groups import Element, Pair, PermGroup, ProductGroup, TupleElement
from geoforge.groupcore.permutation import Permutation
from geoforge.groupcore.subgroups import Subgroup
from geoforge.ops.actions import CoordinateAction
from geoforge.ops.products import direct_power
from geoforge.ops.twisting import RepChoice, twist, twist_provenance

logger = logging.getLogger(__name__)

TypeLabel = Hashable


def wreath(
    alpha: CosetSystem,
    beta: CosetSystem,
    omega_images: Mapping[str, Permutation],
    reps: RepChoice = None,
    *,
    name: str = "",
) -> CosetSystem:
    """alpha wr beta over Omega = {1..n}.

    ``omega_images`` gives the permutation of Omega induced by each generator
    of beta's group; it must extend to a homomorphism. The result is the
    twisting of the direct power of alpha (types (t, w)) by beta.
    """
    degrees = {sigma.degree for sigma in omega_images.values()}
    if len(degrees) != 1:
        raise DegreeMismatch(f"Coordinate permutations of different degrees: {sorted(degrees)}")
    n = degrees.pop()
    power = direct_power(alpha, range(1, n + 1))
    assert isinstance(power.parent, ProductGroup)
    action = CoordinateAction(power.parent, beta.parent, omega_images, name="coordinates")
    action.validate("exhaustive")
    label = name or f"{alpha.name or 'alpha'} wr {beta.name or 'beta'}"
    system = twist(power, beta, action, reps, name=label)
    twist_provenance(system).extra.update({"omega": n, "kind": "wreath", "base": alpha})
    return system


def wreath_formula_parabolic(sys: CosetSystem, i: TypeLabel) -> Subgroup:
    """Maximal parabolic of a wreath system computed coordinate by coordinate.

    The component at w is the parabolic of alpha over the types t with (t, w)
    in the complement of the orbit unions (for i in I_beta) or in the orbit
    (for i an orbit); the acting part is B_i or B.
    """
    provenance = twist_provenance(sys)
    base: CosetSystem = provenance.extra["base"]
    n: int = provenance.extra["omega"]
    data = provenance.orbit_data
    beta = provenance.beta
    group = provenance.group
    power_group = group.normal
    assert isinstance(power_group, ProductGroup)

    if i in data.orbits:
        chosen = set(i)
        acting = beta.group
    else:
        covered = data.upper_union([i])
        chosen = {(t, w) for t in base.types for w in range(1, n + 1)} - covered
        acting = beta.parabolics[i]
    gens: list[Element] = []
    for k, w in enumerate(range(1, n + 1)):
        component = base.parabolic(t for t in base.types if (t, w) in chosen)
        gens.extend(group.embed_normal(power_group.embed(k, g)) for g in component.generators)
    gens.extend(group.embed_acting(y) for y in acting.generators)
    return Subgroup(group, gens)


def realize_wreath(sys: CosetSystem, name: str = "") -> CosetSystem:
    """Map a wreath of the order-2 segment into the symmetric group on 2n points.

    A pair (a, b) goes to the product of x_w = (2w-1, 2w) over the coordinates
    where a is non-trivial, followed by b. The orbit type becomes 0 and the
    acting types keep their labels.
    """
    provenance = twist_provenance(sys)
    base: CosetSystem = provenance.extra["base"]
    n: int = provenance.extra["omega"]
    if not isinstance(base.parent, PermGroup) or base.parent.degree != 2 or base.rank != 1:
        raise ValueError("Only wreaths of the rank-one order-2 segment can be realized")
    degree = 2 * n
    toggles = [Permutation.from_cycles([(2 * w - 1, 2 * w)], degree) for w in range(1, n + 1)]

    def realize(x: Pair) -> Permutation:
        result = Permutation.identity(degree)
        bits: TupleElement = x.a
        for toggle, component in zip(toggles, bits, strict=True):
            if not component.is_identity():
                result = result * toggle
        return result * x.b

    target = PermGroup(
        {label: realize(g) for label, g in sys.parent.generators.items()}, degree, name=name
    )
    relabel = {t: (0 if t in provenance.orbit_data.orbits else t) for t in sys.types}
    return CosetSystem(
        Subgroup(target, [realize(g) for g in sys.group.generators]),
        {relabel[t]: Subgroup(target, [realize(g) for g in sys.parabolics[t].generators]) for t in sys.types},
        name=name or f"{sys.name} (realized)",
    )
