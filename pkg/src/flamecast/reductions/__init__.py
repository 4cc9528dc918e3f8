"""Hardness constructions and the closed-form quantities used in their analysis."""

from .bounds import (
    alpha_threshold,
    alpha_threshold_gap,
    bundling_increment,
    cost_gap_f,
    critical_distance,
    gap_lower_bound,
    inapprox_factor,
    split_gain_bound,
)
from .partition import (
    PartitionInstance,
    auto_c_hat,
    build_partition_instance,
    canonical_partition_layout,
    recover_triples,
)
from .sat import (
    Clause,
    Gadget,
    GadgetInstance,
    SatDrawing,
    SourceGroup,
    build_sat_instance,
    canonical_layout,
    draw_formula,
    example_drawing,
    greedy_assignment,
    is_canonical,
    truth_assignment,
    validate_drawing,
)

__all__ = [
    "Clause",
    "Gadget",
    "GadgetInstance",
    "PartitionInstance",
    "SatDrawing",
    "SourceGroup",
    "alpha_threshold",
    "alpha_threshold_gap",
    "auto_c_hat",
    "build_partition_instance",
    "build_sat_instance",
    "bundling_increment",
    "canonical_layout",
    "canonical_partition_layout",
    "cost_gap_f",
    "critical_distance",
    "draw_formula",
    "example_drawing",
    "gap_lower_bound",
    "greedy_assignment",
    "inapprox_factor",
    "is_canonical",
    "recover_triples",
    "split_gain_bound",
    "truth_assignment",
    "validate_drawing",
]
