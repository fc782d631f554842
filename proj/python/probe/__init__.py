"""Probabilistic process models: parsing, exploration, bisimulation, simulation."""

from ._probe import (
    DEFAULT_SEED,
    HOTEL_LIMIT,
    ProbeError,
    ProbeLimitError,
    ProbeParseError,
    bernoulli_spec,
    compare,
    complement_product,
    explore,
    hotel_light_probability,
    hotel_light_probability_float,
    hotel_spec,
    limit_estimate,
    minimize,
    pretty_print,
    simulate,
    trace_distribution,
    validate,
    wilson_interval,
)

__all__ = [
    "DEFAULT_SEED",
    "HOTEL_LIMIT",
    "ProbeError",
    "ProbeLimitError",
    "ProbeParseError",
    "bernoulli_spec",
    "compare",
    "complement_product",
    "explore",
    "hotel_light_probability",
    "hotel_light_probability_float",
    "hotel_spec",
    "limit_estimate",
    "minimize",
    "pretty_print",
    "simulate",
    "trace_distribution",
    "validate",
    "wilson_interval",
]
