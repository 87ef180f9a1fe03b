"""GPSR / S-GPSR wireless sensor network simulator."""

from ._sgpsr import (
    CSV_HEADER,
    ConfigError,
    SimConfig,
    angle_of,
    euclidean_distance,
    gabriel_subgraph,
    is_trusted,
    next_edge_right_hand,
    rng_subgraph,
    select_greedy_next_hop,
    simulate,
    sweep,
    update_trust,
)

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "SimConfig",
    "angle_of",
    "euclidean_distance",
    "gabriel_subgraph",
    "is_trusted",
    "next_edge_right_hand",
    "rng_subgraph",
    "select_greedy_next_hop",
    "simulate",
    "sweep",
    "update_trust",
]
