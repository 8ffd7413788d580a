"""Semilinear parabolic problems by Banach fixed-point iteration."""

from .fixedpoint import contraction_and_ball_report, fixed_point_solve, write_history
from .norms import apply_inverse, d_norm, data_norm, estimate_inverse_norm, probe_family, s_norm
from .smallness import smallness_check
from .types import ContractionReport, FixedPointConfig, IterationHistory, SmallnessVerdict

__all__ = [
    "ContractionReport",
    "FixedPointConfig",
    "IterationHistory",
    "SmallnessVerdict",
    "apply_inverse",
    "contraction_and_ball_report",
    "d_norm",
    "data_norm",
    "estimate_inverse_norm",
    "fixed_point_solve",
    "probe_family",
    "s_norm",
    "smallness_check",
    "write_history",
]
