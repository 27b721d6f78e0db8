"""The lamplighter group and its infinite street geometry."""

from geoforge.streetlight.lamplighter import (
    IDENTITY,
    SHIFT,
    TOGGLE,
    LampConfig,
    LamplighterElement,
    ll_inv,
    ll_mul,
    ll_pow,
    ll_word,
    parse_lamp_literal,
)
from geoforge.streetlight.street import (
    State,
    StreetElement,
    Uncertain,
    canonical_street,
    incident,
    representative,
    resolve,
    street_act,
    street_distance_bfs,
    street_window_graph,
    street_path,
    uncertainties_in_window,
)

__all__ = [
    "IDENTITY",
    "SHIFT",
    "TOGGLE",
    "LampConfig",
    "LamplighterElement",
    "State",
    "StreetElement",
    "Uncertain",
    "canonical_street",
    "incident",
    "ll_inv",
    "ll_mul",
    "ll_pow",
    "ll_word",
    "parse_lamp_literal",
    "representative",
    "resolve",
    "street_act",
    "street_distance_bfs",
    "street_window_graph",
    "street_path",
    "uncertainties_in_window",
]
