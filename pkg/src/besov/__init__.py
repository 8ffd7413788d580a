"""Besov quasi-norms, best N-term approximation and smoothness estimation."""

from .estimate import (
    besov_membership_ceiling,
    estimate_from_level_sums,
    estimate_smoothness,
    tau_window,
)
from .norms import adaptivity_norm, besov_quasinorm, level_sums, lp_sum
from .nterm import best_n_term, fit_rate, fraction_window, n_term_curve, running_rate
from .types import (
    AdaptivityScalePoint,
    BesovParams,
    NTermCurve,
    NTermResult,
    RateFit,
    SmoothnessEstimate,
    SmoothnessScale,
)

__all__ = [
    "AdaptivityScalePoint",
    "BesovParams",
    "NTermCurve",
    "NTermResult",
    "RateFit",
    "SmoothnessEstimate",
    "SmoothnessScale",
    "adaptivity_norm",
    "besov_membership_ceiling",
    "besov_quasinorm",
    "best_n_term",
    "estimate_from_level_sums",
    "estimate_smoothness",
    "fit_rate",
    "fraction_window",
    "level_sums",
    "lp_sum",
    "n_term_curve",
    "running_rate",
    "tau_window",
]
