"""Rokhlin tower constructions and certified verifiers."""

from ._rokhlin import (
    PLFunction,
    build_rotation_towers,
    build_splice,
    certified_sup_distance,
    convergents,
    decay_commutator_check,
    decay_factor,
    decompose_returns,
    dimension_drop,
    elementary_decompose,
    find_approximant_avoiding,
    free_action_towers,
    linear_combine,
    product_sup_norm,
    rotate,
    run_cli,
    sup_distance,
    verify_splice,
)

__all__ = [
    "PLFunction",
    "build_rotation_towers",
    "build_splice",
    "certified_sup_distance",
    "convergents",
    "decay_commutator_check",
    "decay_factor",
    "decompose_returns",
    "dimension_drop",
    "elementary_decompose",
    "find_approximant_avoiding",
    "free_action_towers",
    "linear_combine",
    "product_sup_norm",
    "rotate",
    "run_cli",
    "sup_distance",
    "verify_splice",
]
