"""Layered capacitated Steiner layouts with flow-dependent edge costs."""

from .circular_dp import block_cost, solve_circular
from .convex_dp import cyclic_order, group_cost, solve_convex
from .embedder import EmbedConfig, embed, embedding_lower_bound
from .errors import (
    AllZeroWeights,
    DrawingInvalid,
    EmptyInput,
    FlamecastError,
    Infeasible,
    MissingPosition,
    NotConvex,
    NotThreePartition,
    ShapeError,
    StructureError,
    TooLarge,
    UnsupportedCase,
    WrongCase,
)
from .geometry import Point, WeberResult, WeightedPoint, convex_hull, point_in_hull, segments_intersect, weber_point
from .matching import hungarian, solve_matching
from .model import (
    Algorithm,
    Instance,
    InstanceClass,
    Layout,
    SolveReport,
    Topology,
    ValidityReport,
    classify,
    evaluate_cost,
    is_feasible,
    validate,
)
from .oracle import OracleConfig, enumerate_topologies, solve_oracle

__all__ = [
    "Algorithm",
    "AllZeroWeights",
    "DrawingInvalid",
    "EmbedConfig",
    "EmptyInput",
    "FlamecastError",
    "Infeasible",
    "Instance",
    "InstanceClass",
    "Layout",
    "MissingPosition",
    "NotConvex",
    "NotThreePartition",
    "OracleConfig",
    "Point",
    "ShapeError",
    "SolveReport",
    "StructureError",
    "TooLarge",
    "Topology",
    "UnsupportedCase",
    "ValidityReport",
    "WeberResult",
    "WeightedPoint",
    "WrongCase",
    "block_cost",
    "classify",
    "convex_hull",
    "cyclic_order",
    "embed",
    "embedding_lower_bound",
    "enumerate_topologies",
    "evaluate_cost",
    "group_cost",
    "hungarian",
    "is_feasible",
    "point_in_hull",
    "segments_intersect",
    "solve_circular",
    "solve_convex",
    "solve_matching",
    "solve_oracle",
    "validate",
    "weber_point",
]
