"""Exact cluster patterns, G-fans, rank-2 scattering diagrams and theta functions."""

from .errors import (
    InexactDivision,
    InvariantViolation,
    NotSkewSymmetrizable,
    SingularMatrix,
    UnsupportedRank,
)
from .fan import build_g_fan, g_vector_sequence, rank2_fan_rays, verify_fan
from .matrix import ExchangeMatrix, find_skew_symmetrizer, mutate_matrix
from .pattern import PatternPoint, evaluate_walk, initial_point, mutate_point
from .poly import LaurentPoly
from .scattering import ScatteringDiagram, check_consistency_rank2, complete_rank2, mutate_diagram
from .separation import mutate_x_direct, tropicalize, x_variable, y_variable
from .theta import enumerate_broken_lines, theta

__version__ = "0.1.0"

__all__ = [
    "ExchangeMatrix",
    "InexactDivision",
    "InvariantViolation",
    "LaurentPoly",
    "NotSkewSymmetrizable",
    "PatternPoint",
    "ScatteringDiagram",
    "SingularMatrix",
    "UnsupportedRank",
    "build_g_fan",
    "check_consistency_rank2",
    "complete_rank2",
    "enumerate_broken_lines",
    "evaluate_walk",
    "find_skew_symmetrizer",
    "g_vector_sequence",
    "initial_point",
    "mutate_diagram",
    "mutate_matrix",
    "mutate_point",
    "mutate_x_direct",
    "rank2_fan_rays",
    "theta",
    "tropicalize",
    "verify_fan",
    "x_variable",
    "y_variable",
]
