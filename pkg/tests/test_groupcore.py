from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geoforge.common.config import use_caps
from geoforge.common.errors import (
    CapExceeded,
    DegreeMismatch,
    MalformedCycle,
    MixedGroupOperands,
    NotAHomomorphism,
    NotBijective,
    PointOutOfRange,
    RepeatedPointWithinCycle,
)
from geoforge.groupcore import (
    Pair,
    PermGroup,
    Permutation,
    ProductGroup,
    SemidirectGroup,
    Subgroup,
    automorphism_from_images,
    conjugate,
    coset_action,
    extend_homomorphism,
    group_order,
    intersect,
    left_transversal,
    multiply,
    parse_permutation,
    product_set,
)


def perms(n: int) -> st.SearchStrategy[Permutation]:
    return st.permutations(list(range(1, n + 1))).map(Permutation)


# --- Permutations ---


def test_cycles_compose_left_to_right():
    p = parse_permutation("(1,2)(2,3)", 3)
    assert p == Permutation.from_cycles([(1, 3, 2)], 3)
    assert str(p) == "(1,3,2)"


def test_identity_prints_as_e():
    assert str(Permutation.identity(5)) == "e"
    assert parse_permutation("e", 5).is_identity()


@pytest.mark.parametrize(
    ("text", "error"),
    [
        ("(1,5)", PointOutOfRange),
        ("(1,2", MalformedCycle),
        ("(1)", MalformedCycle),
        ("", MalformedCycle),
        ("(1,2,1)", RepeatedPointWithinCycle),
    ],
)
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse_permutation(text, 4)


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        Permutation.identity(3) * Permutation.identity(4)
    with pytest.raises(MixedGroupOperands):
        multiply(Permutation.identity(3), Permutation.identity(4))


@given(perms(6), perms(6), st.integers(min_value=1, max_value=6))
def test_right_action(p, q, x):
    assert (p * q).image(x) == q.image(p.image(x))


@given(perms(7))
def test_inverse_and_order(p):
    assert (p * p.inverse()).is_identity()
    assert not any((p**k).is_identity() for k in range(1, p.order()))
    assert (p ** p.order()).is_identity()


def test_order_of_a_mixed_cycle_type():
    assert parse_permutation("(1,2)(3,4,5)", 6).order() == 6
    assert parse_permutation("(1,2,3,4)(5,6)", 6).order() == 4
    assert Permutation.identity(3).order() == 1


@given(perms(5))
def test_cycle_notation_reparses(p):
    assert parse_permutation(str(p), 5) == p


# --- Groups ---


def test_symmetric_orders():
    assert PermGroup.symmetric(4).order() == 24
    assert PermGroup.symmetric(5).order() == 120


def test_product_group_order():
    s3 = PermGroup.symmetric(3)
    c2 = PermGroup.from_cycles({"x": "(1,2)"}, 2)
    group = ProductGroup([s3, c2])
    assert group.order() == 12
    assert group.element_order(group.embed(0, s3.generators["s1"])) == 2


def test_semidirect_by_conjugation_is_nonabelian():
    c3 = PermGroup.from_cycles({"c": "(1,2,3)"}, 3)
    c2 = PermGroup.from_cycles({"t": "(1,2)"}, 3)
    group = SemidirectGroup(c3, c2, lambda b, a: b * a * b.inverse())
    assert group.order() == 6
    c, t = group.embed_normal(c3.generators["c"]), group.embed_acting(c2.generators["t"])
    assert group.multiply(c, t) != group.multiply(t, c)
    assert group.multiply(group.invert(c), c) == Pair(c3.identity(), c2.identity())


def test_closure_cap():
    with use_caps(closure=10), pytest.raises(CapExceeded) as info:
        PermGroup.symmetric(5).elements()
    assert info.value.cap == 10


# --- Subgroups ---


def test_intersection_and_product_set(sym4):
    left = Subgroup(sym4, [parse_permutation("(1,2)", 4), parse_permutation("(2,3)", 4)])
    right = Subgroup(sym4, [parse_permutation("(2,3)", 4), parse_permutation("(3,4)", 4)])
    meet = intersect(left, right)
    assert meet.order() == 2
    assert meet.contains(parse_permutation("(2,3)", 4))
    assert len(product_set(left, right)) == 6 * 6 // 2


def test_left_transversal_starts_at_identity(sym4):
    stabilizer = Subgroup(sym4, [parse_permutation("(1,2)", 4), parse_permutation("(2,3)", 4)])
    reps = left_transversal(sym4.whole(), stabilizer)
    assert len(reps) == 4
    assert reps[0].is_identity()
    assert reps == sorted(reps)


def test_transversal_cap_counts_cosets_not_elements(sym4):
    stabilizer = Subgroup(sym4, [parse_permutation("(1,2)", 4), parse_permutation("(2,3)", 4)])
    assert len(left_transversal(sym4.whole(), stabilizer, cap=4)) == 4
    with pytest.raises(CapExceeded):
        left_transversal(sym4.whole(), stabilizer, cap=3)


def test_coset_action_is_a_homomorphism(sym4):
    stabilizer = Subgroup(sym4, [parse_permutation("(1,2)", 4), parse_permutation("(2,3)", 4)])
    image_group, image = coset_action(sym4.whole(), stabilizer)
    assert image_group.degree == 4
    assert image_group.order() == 24
    g, h = parse_permutation("(1,2,3,4)", 4), parse_permutation("(1,3)", 4)
    assert image(g * h) == image(g) * image(h)


def test_same_as_compares_element_sets(sym4):
    a = Subgroup(sym4, [parse_permutation("(1,2)", 4), parse_permutation("(2,3)", 4)])
    b = Subgroup(sym4, [parse_permutation("(1,3)", 4), parse_permutation("(1,2,3)", 4)])
    assert a.same_as(b)
    assert not a.same_as(sym4.whole())


# --- Automorphisms ---


def test_swap_of_sym3_generators_is_inner():
    s3 = PermGroup.symmetric(3)
    auto = automorphism_from_images(s3, {"s1": s3.generators["s2"], "s2": s3.generators["s1"]})
    assert auto.is_inner is True
    assert auto(s3.generators["s1"]) == s3.generators["s2"]


def test_inconsistent_images_are_rejected():
    s3 = PermGroup.symmetric(3)
    with pytest.raises(NotAHomomorphism):
        automorphism_from_images(
            s3, {"s1": s3.generators["s1"], "s2": parse_permutation("(1,2,3)", 3)}
        )


def test_collapsing_images_are_rejected():
    s3 = PermGroup.symmetric(3)
    with pytest.raises(NotBijective):
        automorphism_from_images(s3, {"s1": s3.generators["s1"], "s2": s3.generators["s1"]})


def test_conjugate_subgroup():
    G = PermGroup.symmetric(4)
    H = Subgroup(G, [parse_permutation("(1,2)", 4)])
    moved = conjugate(H, parse_permutation("(2,3)", 4))
    assert moved.same_as(Subgroup(G, [parse_permutation("(1,3)", 4)]))
    with pytest.raises(DegreeMismatch):
        conjugate(H, parse_permutation("(2,3)", 5))


def test_group_order_of_symmetric_groups():
    assert group_order(PermGroup.symmetric(4)) == 24


def test_sign_extends_to_a_homomorphism():
    G = PermGroup.symmetric(3)
    gens = list(G.generators.values())
    sign = extend_homomorphism(
        gens, [-1, -1], G.multiply, G.identity(), lambda a, b: a * b, 1
    )
    assert len(sign) == 6
    assert sum(1 for v in sign.values() if v == -1) == 3
    assert sign[parse_permutation("(1,2,3)", 3)] == 1
    with pytest.raises(NotAHomomorphism):
        extend_homomorphism(gens, [-1, 1], G.multiply, G.identity(), lambda a, b: a * b, 1)
