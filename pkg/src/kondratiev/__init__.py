"""Kondratiev (weighted Sobolev) norms, analytic test functions and FD derivatives."""

from .derivatives import axis_derivative, fd_derivative
from .functions import (
    ConstantFunction,
    CornerSingularFunction,
    ProductFunction,
    ScaledFunction,
    SeparablePolynomial,
    box_cutoff,
    grid_function,
    multiply_grid_functions,
    polynomial_bump,
    singular_model,
)
from .norms import (
    algebra_regime,
    kondratiev_norm,
    kondratiev_threshold,
    multi_indices,
    product_norm_ratio,
    radial_integral_converges,
    time_kondratiev_norm,
)
from .types import (
    AnalyticFunction,
    GridFunction,
    KondratievNormResult,
    KondratievParams,
    NormStatus,
)

__all__ = [
    "AnalyticFunction",
    "ConstantFunction",
    "CornerSingularFunction",
    "GridFunction",
    "KondratievNormResult",
    "KondratievParams",
    "NormStatus",
    "ProductFunction",
    "ScaledFunction",
    "SeparablePolynomial",
    "algebra_regime",
    "axis_derivative",
    "box_cutoff",
    "fd_derivative",
    "grid_function",
    "kondratiev_norm",
    "kondratiev_threshold",
    "multi_indices",
    "multiply_grid_functions",
    "polynomial_bump",
    "product_norm_ratio",
    "radial_integral_converges",
    "singular_model",
    "time_kondratiev_norm",
]
