"""Admissibility, orbit tables and the twisting construction.

For each orbit L of B on the types of alpha and a representative F in L,
the lower table holds O_M, the orbit of F under B_{I_beta - M}, for every
M inside I_beta. The upper table is O^J = O_{I_beta - J}, the orbit of F
under B_J. A representative is valid when the lower table satisfies
O_M meet O_N = O_{M meet N} for all M, N.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from geoforge.common.errors import (
    MixedGroupOperands,
    NotAdmissible,
    RepNotValid,
    TypeLabelCollision,
)
from geoforge.cosetgeom.system import CosetSystem
from geoforge.groupcore.groups import SemidirectGroup
from geoforge.groupcore.subgroups import Subgroup
from geoforge.ops.actions import ActionSpec, Orbit, TypeAction, validate_action
from geoforge.ops.products import semidirect

logger = logging.getLogger(__name__)

TypeLabel = Hashable
RepChoice = Mapping[Orbit, TypeLabel] | Sequence[TypeLabel] | None


@dataclass(frozen=True)
class OrbitTable:
    """Orbit table of one representative F of one orbit L."""

    orbit: Orbit
    representative: TypeLabel
    beta_types: tuple[TypeLabel, ...]
    lower: dict[frozenset, frozenset] = field(repr=False)

    def lower_of(self, M: Iterable[TypeLabel]) -> frozenset:
        return self.lower[frozenset(M)]

    def upper_of(self, J: Iterable[TypeLabel]) -> frozenset:
        chosen = frozenset(J)
        return self.lower[frozenset(t for t in self.beta_types if t not in chosen)]

    def ipo_violation(self) -> tuple[tuple, tuple] | None:
        """First (M, N) with O_M meet O_N != O_{M meet N}, or None."""
        subsets = list(self.lower)
        for a, M in enumerate(subsets):
            for N in subsets[a:]:
                if M <= N or N <= M:
                    continue
                if self.lower[M] & self.lower[N] != self.lower[M & N]:
                    return (_ordered(M, self.beta_types), _ordered(N, self.beta_types))
        return None

    def to_json(self) -> dict[str, Any]:
        return {
            "orbit": list(self.orbit),
            "representative": self.representative,
            "lower": {
                str(list(_ordered(M, self.beta_types))): sorted(map(str, O))
                for M, O in self.lower.items()
            },
        }


def _ordered(M: Iterable[TypeLabel], types: Sequence[TypeLabel]) -> tuple[TypeLabel, ...]:
    chosen = set(M)
    return tuple(t for t in types if t in chosen)


def orbit_table(
    type_action: TypeAction, beta: CosetSystem, L: Orbit, F: TypeLabel
) -> OrbitTable:
    """O_M for every M inside I_beta, as the orbit of F under B_{I_beta - M}.

    Raises:
        RepNotValid: If F does not lie in L.
    """
    if F not in L:
        raise RepNotValid(L, F)
    lower = {
        frozenset(M): type_action.orbit_under(F, beta.parabolic(beta.complement(M)).generators)
        for M in beta.subsets()
    }
    return OrbitTable(tuple(L), F, beta.types, lower)


@dataclass
class OrbitData:
    """The chosen representative of every orbit with its table."""

    type_action: TypeAction
    beta: CosetSystem
    tables: dict[Orbit, OrbitTable]

    @property
    def orbits(self) -> tuple[Orbit, ...]:
        return self.type_action.orbits

    @property
    def representatives(self) -> dict[Orbit, TypeLabel]:
        return {L: table.representative for L, table in self.tables.items()}

    def upper_union(self, J: Iterable[TypeLabel], orbits: Iterable[Orbit] | None = None) -> frozenset:
        """Union over orbits of O^J."""
        chosen = frozenset(J)
        pool = self.orbits if orbits is None else orbits
        result: frozenset = frozenset()
        for L in pool:
            result |= self.tables[L].upper_of(chosen)
        return result

    def to_json(self) -> dict[str, Any]:
        return {"tables": [t.to_json() for t in self.tables.values()]}


@dataclass
class Admissibility:
    """Valid representatives of every orbit."""

    type_action: TypeAction
    tables: dict[Orbit, dict[TypeLabel, OrbitTable]]
    valid: dict[Orbit, tuple[TypeLabel, ...]]

    @property
    def admissible(self) -> bool:
        return all(self.valid.values())

    def witness(self, L: Orbit, F: TypeLabel) -> tuple[tuple, tuple] | None:
        return self.tables[L][F].ipo_violation()

    def to_json(self) -> dict[str, Any]:
        return {
            "admissible": self.admissible,
            "valid": {str(list(L)): list(reps) for L, reps in self.valid.items()},
        }


def check_admissible(alpha: CosetSystem, beta: CosetSystem, action: ActionSpec) -> Admissibility:
    """Every representative of every orbit that satisfies the orbit intersection property."""
    if beta.parent is not action.actor:
        raise MixedGroupOperands("The acting system's group is not the action's actor")
    type_action = validate_action(action, alpha)
    tables = {
        L: {F: orbit_table(type_action, beta, L, F) for F in L} for L in type_action.orbits
    }
    valid = {
        L: tuple(F for F, table in per_rep.items() if table.ipo_violation() is None)
        for L, per_rep in tables.items()
    }
    logger.debug("Admissibility of %s by %s: %s", alpha.name, beta.name, valid)
    return Admissibility(type_action, tables, valid)


def representative_choices(
    alpha: CosetSystem, beta: CosetSystem, action: ActionSpec
) -> list[dict[Orbit, TypeLabel]]:
    """All choices of one valid representative per orbit, in sorted order."""
    result = check_admissible(alpha, beta, action)
    orbits = list(result.valid)
    return [
        dict(zip(orbits, choice, strict=True))
        for choice in itertools.product(*(result.valid[L] for L in orbits))
    ]


def orbit_identity_violations(data: OrbitData) -> list[tuple[str, tuple]]:
    """Evaluate the set identities that orbit tables satisfy under admissibility.

    Checked for all orbits L, L1, L2 and type subsets M, N, J of I_beta:
    ``a``: O^M meet O^N = O^{M join N};
    ``b``: (L - O^M) join (L - O^N) = L - O^{M join N};
    ``c``: (L1 - O1^M) join (L2 - O2^N) = (L1 join L2) - (O1^M join O2^N);
    ``d``: for single types j, k the complements of O1^j join O2^j and
    O1^k join O2^k unite to the complement of O1^{j,k} join O2^{j,k};
    ``e``: (I - union of O^J) join L1 = I - union over L != L1 of O^J.
    """
    beta = data.beta
    everything = frozenset(data.type_action.types)
    subsets = [frozenset(s) for s in beta.subsets()]
    found: list[tuple[str, tuple]] = []
    orbits = data.orbits

    for L in orbits:
        table = data.tables[L]
        whole = frozenset(L)
        for M, N in itertools.product(subsets, repeat=2):
            up_m, up_n, up_mn = table.upper_of(M), table.upper_of(N), table.upper_of(M | N)
            if up_m & up_n != up_mn:
                found.append(("a", (L, M, N)))
            if (whole - up_m) | (whole - up_n) != whole - up_mn:
                found.append(("b", (L, M, N)))

    for L1, L2 in itertools.combinations(orbits, 2):
        t1, t2 = data.tables[L1], data.tables[L2]
        w1, w2 = frozenset(L1), frozenset(L2)
        for M, N in itertools.product(subsets, repeat=2):
            lhs = (w1 - t1.upper_of(M)) | (w2 - t2.upper_of(N))
            if lhs != (w1 | w2) - (t1.upper_of(M) | t2.upper_of(N)):
                found.append(("c", (L1, L2, M, N)))
        for j, k in itertools.combinations(beta.types, 2):
            lhs = (everything - (t1.upper_of([j]) | t2.upper_of([j]))) | (
                everything - (t1.upper_of([k]) | t2.upper_of([k]))
            )
            rhs = everything - (t1.upper_of([j, k]) | t2.upper_of([j, k]))
            if lhs != rhs:
                found.append(("d", (L1, L2, j, k)))

    for L1 in orbits:
        others = [L for L in orbits if L != L1]
        for J in subsets:
            lhs = (everything - data.upper_union(J)) | frozenset(L1)
            if lhs != everything - data.upper_union(J, others):
                found.append(("e", (L1, J)))
    return found


# --- Twisting ---


@dataclass(frozen=True)
class TwistProvenance:
    kind: str
    alpha: CosetSystem
    beta: CosetSystem
    action: ActionSpec
    orbit_data: OrbitData
    group: SemidirectGroup
    extra: dict[str, Any] = field(default_factory=dict)


def _resolve_reps(admissibility: Admissibility, reps: RepChoice) -> dict[Orbit, TypeLabel]:
    type_action = admissibility.type_action
    if reps is None:
        chosen = {}
        for L, valid in admissibility.valid.items():
            if not valid:
                raise NotAdmissible(f"Orbit {list(L)} has no representative satisfying (IPO)")
            chosen[L] = valid[0]
        return chosen
    if isinstance(reps, Mapping):
        chosen = {tuple(L): F for L, F in reps.items()}
    else:
        chosen = {type_action.orbit_of(F): F for F in reps}
    for L in type_action.orbits:
        if L not in chosen:
            raise NotAdmissible(f"No representative chosen for orbit {list(L)}")
    for L, F in chosen.items():
        if L not in admissibility.tables or F not in L:
            raise RepNotValid(L, F)
        if F not in admissibility.valid[L]:
            raise RepNotValid(L, F)
    return {L: chosen[L] for L in type_action.orbits}


def twist(
    alpha: CosetSystem,
    beta: CosetSystem,
    action: ActionSpec,
    reps: RepChoice = None,
    *,
    name: str = "",
) -> CosetSystem:
    """The twisting of alpha by beta with respect to ``action`` and ``reps``.

    Types are the orbits K of B on I_alpha (as sorted tuples), followed by
    I_beta. G_L = A_L x| B for an orbit L, and
    G_i = A_{I_alpha - union of O^i} x| B_i for i in I_beta.

    Args:
        alpha: The acted-on system (group A).
        beta: The acting system (group B).
        action: A validated action of B on A.
        reps: Orbit -> representative, or a list of representatives; None
            takes the first valid representative of each orbit.
        name: Name of the result.

    Raises:
        NotAdmissible: When some orbit has no valid representative.
        RepNotValid: When a chosen representative fails (IPO).
    """
    group = semidirect(alpha.parent, beta.parent, action)
    admissibility = check_admissible(alpha, beta, action)
    chosen = _resolve_reps(admissibility, reps)
    type_action = admissibility.type_action
    data = OrbitData(
        type_action, beta, {L: admissibility.tables[L][F] for L, F in chosen.items()}
    )

    orbits = type_action.orbits
    clashes = [t for t in beta.types if t in orbits]
    if clashes:
        raise TypeLabelCollision(clashes)

    def lift(a_part: Subgroup, b_part: Subgroup) -> Subgroup:
        return Subgroup(
            group,
            [group.embed_normal(x) for x in a_part.generators]
            + [group.embed_acting(y) for y in b_part.generators],
        )

    parabolics: dict[TypeLabel, Subgroup] = {}
    for L in orbits:
        parabolics[L] = lift(alpha.parabolic(L), beta.group)
    for i in beta.types:
        covered = data.upper_union([i])
        rest = [t for t in alpha.types if t not in covered]
        parabolics[i] = lift(alpha.parabolic(rest), beta.parabolics[i])

    label = name or f"T({alpha.name or 'alpha'}, {beta.name or 'beta'})"
    system = CosetSystem(
        lift(alpha.group, beta.group),
        parabolics,
        name=label,
        provenance=TwistProvenance("twist", alpha, beta, action, data, group),
        validate=False,
    )
    logger.info(
        "Twisted %s: rank %d, representatives %s",
        label,
        system.rank,
        {str(list(L)): F for L, F in chosen.items()},
    )
    return system


def twist_provenance(sys: CosetSystem) -> TwistProvenance:
    if not isinstance(sys.provenance, TwistProvenance):
        raise ValueError(f"{sys.name or 'system'} was not built by twisting")
    return sys.provenance


def twist_formula_parabolic(sys: CosetSystem, J: Iterable[TypeLabel]) -> Subgroup:
    """A_{[J_alpha]} x| B_{J_beta} from the orbit tables.

    [J_alpha] is the union of the orbits in J together with the types of
    alpha outside every O^{J_beta}.
    """
    provenance = twist_provenance(sys)
    key = sys.key(J)
    alpha, beta, data, group = (
        provenance.alpha,
        provenance.beta,
        provenance.orbit_data,
        provenance.group,
    )
    j_beta = [t for t in beta.types if t in key]
    j_alpha = [L for L in data.orbits if L in key]
    covered = data.upper_union(j_beta)
    bracket = {t for L in j_alpha for t in L} | {t for t in alpha.types if t not in covered}
    a_part = alpha.parabolic(bracket)
    b_part = beta.parabolic(j_beta)
    return Subgroup(
        group,
        [group.embed_normal(x) for x in a_part.generators]
        + [group.embed_acting(y) for y in b_part.generators],
    )
