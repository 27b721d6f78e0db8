from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geoforge.common.errors import ParseError
from geoforge.streetlight import (
    IDENTITY,
    SHIFT,
    TOGGLE,
    LampConfig,
    LamplighterElement,
    State,
    Uncertain,
    canonical_street,
    incident,
    ll_inv,
    ll_mul,
    ll_pow,
    ll_word,
    parse_lamp_literal,
    representative,
    resolve,
    street_act,
    street_distance_bfs,
    street_window_graph,
    street_path,
    uncertainties_in_window,
)

configs = st.frozensets(st.integers(min_value=-6, max_value=6), max_size=5).map(LampConfig.of)
elements = st.builds(LamplighterElement, configs, st.integers(min_value=-6, max_value=6))
states = configs.map(State)
small_states = st.frozensets(st.integers(min_value=-3, max_value=3), max_size=3).map(
    lambda c: State(LampConfig.of(c))
)


# --- Group ---


def test_relators():
    assert ll_word("aa") == IDENTITY
    assert ll_word("tT") == IDENTITY
    assert ll_word("taT") == LamplighterElement(LampConfig((1,)), 0)
    assert ll_word("ta") == LamplighterElement(LampConfig((1,)), 1)
    assert ll_pow(SHIFT, -2) == LamplighterElement(LampConfig(), -2)
    assert ll_pow(TOGGLE, 0) == IDENTITY


def test_unknown_letter():
    with pytest.raises(ParseError) as info:
        ll_word("atx")
    assert info.value.col == 3


@given(elements, elements, elements)
def test_associative(x, y, z):
    assert ll_mul(ll_mul(x, y), z) == ll_mul(x, ll_mul(y, z))


@given(elements)
def test_inverse(x):
    assert ll_mul(x, ll_inv(x)) == IDENTITY
    assert ll_mul(ll_inv(x), x) == IDENTITY


def test_lamp_literals():
    assert parse_lamp_literal("on=3,5 shift=0") == LamplighterElement(LampConfig((3, 5)), 0)
    assert parse_lamp_literal("on=-1 shift=2") == LamplighterElement(LampConfig((-1,)), 2)
    assert parse_lamp_literal("on=") == IDENTITY
    with pytest.raises(ParseError):
        parse_lamp_literal("lamps=3")
    with pytest.raises(ParseError):
        parse_lamp_literal("on=3,-")


# --- Street geometry ---


@given(elements, st.integers(min_value=-5, max_value=5))
def test_state_is_a_coset_of_the_shift(g, k):
    assert canonical_street(ll_mul(g, ll_pow(SHIFT, k)), "state") == canonical_street(g, "state")


@given(elements)
def test_uncertain_is_a_coset_of_the_toggle(g):
    assert canonical_street(ll_mul(g, TOGGLE), "uncertain") == canonical_street(g, "uncertain")


@given(elements)
def test_representative_round_trip(g):
    for kind in ("state", "uncertain"):
        e = canonical_street(g, kind)
        assert canonical_street(representative(e), kind) == e


def test_uncertain_excludes_its_position():
    with pytest.raises(ValueError):
        Uncertain(LampConfig((2,)), 2)


@given(elements)
def test_every_uncertain_state_resolves_two_ways(g):
    u = canonical_street(g, "uncertain")
    off, on = resolve(u)
    assert off != on
    assert incident(off, u) and incident(on, u)


def test_each_state_meets_one_uncertainty_per_position():
    s = State(LampConfig((0, 2)))
    window = uncertainties_in_window(s, (-3, 3))
    assert len(window) == 7
    assert all(incident(s, u) for u in window)
    u = Uncertain(LampConfig((0,)), 1)
    universe = [State(LampConfig.of(c)) for k in range(4) for c in itertools.combinations(range(-3, 4), k)]
    assert sum(incident(x, u) for x in universe) == 2


@given(elements, states, st.integers(min_value=-6, max_value=6))
def test_action_preserves_incidence(g, s, p):
    u = Uncertain(s.config.without(p), p)
    assert incident(s, u)
    moved_s, moved_u = street_act(g, s), street_act(g, u)
    assert isinstance(moved_s, State) and isinstance(moved_u, Uncertain)
    assert incident(moved_s, moved_u)


@given(small_states, small_states)
def test_street_path_is_shortest(s1, s2):
    path = street_path(s1, s2)
    differing = len(s1.config.xor(s2.config))
    assert len(path) == 2 * differing
    if path:
        assert path[-1] == s2
    walk = [s1, *path]
    for a, b in itertools.pairwise(walk):
        state, uncertain = (a, b) if isinstance(a, State) else (b, a)
        assert incident(state, uncertain)
    assert street_distance_bfs(s1, s2) == len(path)


def test_street_path_toggles_in_increasing_order():
    path = street_path(State(LampConfig()), State(LampConfig((5, 3))))
    assert [e.position for e in path if isinstance(e, Uncertain)] == [3, 5]


def test_bfs_outside_the_window():
    s1, s2 = State(LampConfig()), State(LampConfig((3,)))
    assert street_distance_bfs(s1, s1) == 0
    with pytest.raises(ValueError):
        street_distance_bfs(s1, s2, window=(10, 12))


def test_window_graph_is_bipartite_and_three_regular_inside():
    graph = street_window_graph(State(LampConfig((0, 7))), (1, 3))
    states = [n for n in graph if isinstance(n, State)]
    assert len(states) == 8
    assert all(7 in s.config and 0 in s.config for s in states)
    assert all(graph.degree(s) == 3 for s in states)
    assert all(graph.degree(n) == 2 for n in graph if isinstance(n, Uncertain))
    assert graph.number_of_nodes() == 8 + 12
