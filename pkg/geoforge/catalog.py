"""Named example systems used by the CLI, the regression suite and the tests.

Each entry is a zero-argument factory so that callers build fresh groups
(and fresh caches) under whatever caps are active.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence

from geoforge.cgroups.families import builtin_family
from geoforge.cgroups.generators import GeneratorSystem, cgroup_system
from geoforge.cosetgeom.system import CosetSystem
from geoforge.groupcore.groups import PermGroup
from geoforge.groupcore.permutation import Permutation, parse_permutation
from geoforge.groupcore.subgroups import Subgroup
from geoforge.ops.actions import ConjugationAction
from geoforge.ops.products import direct_product
from geoforge.ops.selfdual import self_dual_twist
from geoforge.ops.twisting import RepChoice, twist
from geoforge.ops.wreath import wreath

SystemFactory = Callable[[], CosetSystem]

# --- Generator systems ---


def polygon(n: int) -> GeneratorSystem:
    """The dihedral group of the n-gon: rho_0 fixes vertex 1, rho_0 rho_1 rotates."""
    if n < 3:
        raise ValueError("A polygon needs at least 3 vertices")
    rho_0 = Permutation([(-k) % n + 1 for k in range(n)])
    rho_1 = Permutation([(1 - k) % n + 1 for k in range(n)])
    return GeneratorSystem.from_permutations([rho_0, rho_1], name=f"{n}-gon")


def square() -> GeneratorSystem:
    return polygon(4)


def _transpositions(n: int, name: str) -> GeneratorSystem:
    perms = [Permutation.from_cycles([(i, i + 1)], n) for i in range(1, n)]
    return GeneratorSystem.from_permutations(perms, name=name)


def tetrahedron() -> GeneratorSystem:
    return _transpositions(4, "tetrahedron")


def simplex4() -> GeneratorSystem:
    return _transpositions(5, "4-simplex")


POLYTOPES: dict[str, Callable[[], GeneratorSystem]] = {
    "tetrahedron": tetrahedron,
    "simplex4": simplex4,
    "square": square,
}

M22_GENERATORS = (
    "(3,15)(4,16)(5,9)(6,19)(8,18)(10,17)(14,20)",
    "(1,3)(2,19)(4,5)(6,22)(7,18)(8,12)(9,16)(10,21)(11,17)(13,15)(14,20)",
    "(1,7)(2,12)(5,8)(6,20)(9,18)(11,22)(13,21)(14,19)",
)


def m22() -> GeneratorSystem:
    """Rank-3 string generators of M22 on 22 points."""
    perms = [parse_permutation(text, 22) for text in M22_GENERATORS]
    return GeneratorSystem.from_permutations(perms, name="M22")


# --- Small coset systems ---


def segment(name: str = "segment") -> CosetSystem:
    """Rank one: C2 with the trivial parabolic (two points)."""
    group = PermGroup({"x": Permutation.from_cycles([(1, 2)], 2)}, 2, name="C2")
    return CosetSystem(group, {0: Subgroup.trivial(group)}, name=name)


def _system(
    generators: dict[str, str], degree: int, parabolics: Sequence[Sequence[str]], name: str
) -> CosetSystem:
    group = PermGroup.from_cycles(generators, degree, name=name)
    return CosetSystem(
        group,
        {
            t: Subgroup(group, [parse_permutation(text, degree) for text in gens])
            for t, gens in enumerate(parabolics)
        },
        name=name,
    )


def tetrahedron_twist(reps: RepChoice = None) -> CosetSystem:
    """Twist of the tetrahedron by tau = (1,4)(2,3) acting by conjugation.

    tau swaps rho_0 and rho_2, so the orbits are (0, 2) and (1,); the
    default representatives are 0 and 1.
    """
    alpha = cgroup_system(tetrahedron())
    acting = PermGroup.from_cycles({"tau": "(1,4)(2,3)"}, 4, name="<tau>")
    beta = CosetSystem(acting, {"tau": Subgroup.trivial(acting)}, name="duality")
    action = ConjugationAction(alpha.parent, acting, name="tau")
    return twist(alpha, beta, action, reps if reps is not None else [0, 1], name="cube")


def sym3_on_seven_types() -> tuple[CosetSystem, CosetSystem, ConjugationAction]:
    """C2^7 acted on by Sym(3), which permutes the types 1,3,5 and 2,4,6.

    a_i = (2i+1, 2i+2) for i = 0..6; b7 swaps a1, a3 and a2, a4; b8 swaps
    a3, a5 and a4, a6. The acting system has types 7 and 8 with
    B_7 = <b8> and B_8 = <b7>.
    """
    degree = 14
    toggles = {f"a{i}": Permutation.from_cycles([(2 * i + 1, 2 * i + 2)], degree) for i in range(7)}
    normal = PermGroup(toggles, degree, name="C2^7")
    gens = list(toggles.values())
    alpha = CosetSystem(
        normal,
        {i: Subgroup(normal, [g for j, g in enumerate(gens) if j != i]) for i in range(7)},
        name="C2^7",
    )
    acting = PermGroup.from_cycles(
        {"b7": "(3,7)(4,8)(5,9)(6,10)", "b8": "(7,11)(8,12)(9,13)(10,14)"}, degree, name="Sym(3)"
    )
    beta = CosetSystem(
        acting,
        {
            7: Subgroup(acting, [acting.generators["b8"]]),
            8: Subgroup(acting, [acting.generators["b7"]]),
        },
        name="Sym(3)",
    )
    return alpha, beta, ConjugationAction(normal, acting, name="conjugation")


def wreath_family_beta(r: int) -> tuple[CosetSystem, dict[str, Permutation]]:
    """Sym(r) as block swaps on 2r points, with its action on Omega = {1..r}.

    Types are 1..r-1 with B_i generated by every block swap but the i-th.
    """
    degree = 2 * r
    swaps = {
        f"r{i}": Permutation.from_cycles([(2 * i - 1, 2 * i + 1), (2 * i, 2 * i + 2)], degree)
        for i in range(1, r)
    }
    acting = PermGroup(swaps, degree, name=f"Sym({r})")
    beta = CosetSystem(
        acting,
        {i: Subgroup(acting, [g for label, g in swaps.items() if label != f"r{i}"]) for i in range(1, r)},
        name=f"Sym({r})",
    )
    omega = {f"r{i}": Permutation.from_cycles([(i, i + 1)], r) for i in range(1, r)}
    return beta, omega


def wreath_family(r: int) -> CosetSystem:
    """The segment wreathed by Sym(r); it realizes the T5-13 family."""
    beta, omega = wreath_family_beta(r)
    return wreath(segment(), beta, omega, [(0, 1)], name=f"segment wr Sym({r})")


def join_pairs() -> list[tuple[CosetSystem, CosetSystem]]:
    """Pairs with disjoint types for comparing products with joins."""
    triangle = cgroup_system(polygon(3), name="triangle")
    return [
        (segment(), segment("segment'").relabeled({0: "a"})),
        (triangle, segment("segment'").relabeled({0: "a"})),
        (cgroup_system(square(), name="square"), triangle.relabeled({0: "a", 1: "b"})),
    ]


# --- Designed failures ---


def ft_failures() -> dict[str, SystemFactory]:
    """Rank 3+ systems where a parabolic sits inside the product of two others
    while meeting each of them trivially."""
    return {
        "klein-triangle": lambda: _system(
            {"x": "(1,2)", "y": "(3,4)"}, 4, [["(1,2)"], ["(3,4)"], ["(1,2)(3,4)"]], "klein-triangle"
        ),
        "klein-in-c2^3": lambda: _system(
            {"x": "(1,2)", "y": "(3,4)", "z": "(5,6)"},
            6,
            [["(1,2)"], ["(3,4)"], ["(1,2)(3,4)"]],
            "klein-in-c2^3",
        ),
        "klein-in-sym4": lambda: _system(
            {"s": "(1,2)", "c": "(1,2,3,4)"}, 4, [["(1,2)"], ["(3,4)"], ["(1,2)(3,4)"]], "klein-in-sym4"
        ),
        "klein-in-d4": lambda: _system(
            {"r0": "(2,4)", "r1": "(1,2)(3,4)"}, 4, [["(1,3)"], ["(2,4)"], ["(1,3)(2,4)"]], "klein-in-d4"
        ),
        "klein-rank4": lambda: _system(
            {"x": "(1,2)", "y": "(3,4)", "z": "(5,6)"},
            6,
            [["(1,2)"], ["(3,4)"], ["(1,2)(3,4)"], ["(5,6)"]],
            "klein-rank4",
        ),
    }


def rc_failures() -> dict[str, SystemFactory]:
    """Flag-transitive systems that are not residually connected."""
    return {
        "collapsed-digon": lambda: _system(
            {"x": "(1,2)", "y": "(3,4)"}, 4, [["(1,2)"], ["(1,2)"]], "collapsed-digon"
        ),
        "split-sym4": lambda: _system(
            {"s": "(1,2)", "c": "(1,2,3,4)"}, 4, [["(1,2)"], ["(3,4)"], ["(1,3)"]], "split-sym4"
        ),
    }


def passing_systems() -> dict[str, SystemFactory]:
    """Flag-transitive, residually connected systems."""
    return {
        "segment": segment,
        "triangle": lambda: cgroup_system(polygon(3), name="triangle"),
        "square": lambda: cgroup_system(square(), name="square"),
        "hexagon": lambda: cgroup_system(polygon(6), name="hexagon"),
        "digon": lambda: direct_product(segment(), segment("segment'").relabeled({0: 1})),
        "triangle-x-segment": lambda: direct_product(
            cgroup_system(polygon(3), name="triangle"), segment().relabeled({0: 2})
        ),
        "tetrahedron": lambda: cgroup_system(tetrahedron()),
        "simplex4": lambda: cgroup_system(simplex4()),
        "T9-1(r=3)": lambda: cgroup_system(builtin_family("T9-1", 3)),
        "T5-13(r=3)": lambda: cgroup_system(builtin_family("T5-13", 3)),
        "tetrahedron-twist": tetrahedron_twist,
        "square-selfdual": lambda: self_dual_twist(square()).system,
        "wreath(r=3)": lambda: wreath_family(3),
    }


def fixture_systems() -> dict[str, SystemFactory]:
    """Every named system: passing ones first, then the designed failures."""
    return {**passing_systems(), **ft_failures(), **rc_failures()}

