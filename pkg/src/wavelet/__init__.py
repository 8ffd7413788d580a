"""Orthonormal tensor-product wavelets: filters, transforms, cascade evaluation."""

from .cascade import (
    refinement_gap,
    scaling_function_values,
    vanishing_moment_residual,
    wavelet_function_values,
)
from .filters import check_filter, make_system
from .io import dump_coefficients, load_coefficients
from .support import interior_mask, level_shift, support_boxes
from .transform import (
    box_samples,
    forward_transform,
    inverse_transform,
    transform_box,
    unit_coefficients,
)
from .types import (
    CoefficientTable,
    DyadicCube,
    FilterFamily,
    WaveletCoefficients,
    WaveletSystem,
)

__all__ = [
    "CoefficientTable",
    "DyadicCube",
    "FilterFamily",
    "WaveletCoefficients",
    "WaveletSystem",
    "box_samples",
    "check_filter",
    "dump_coefficients",
    "forward_transform",
    "interior_mask",
    "inverse_transform",
    "level_shift",
    "load_coefficients",
    "make_system",
    "refinement_gap",
    "scaling_function_values",
    "support_boxes",
    "transform_box",
    "unit_coefficients",
    "vanishing_moment_residual",
    "wavelet_function_values",
]
