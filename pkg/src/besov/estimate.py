"""Smoothness estimation from the decay of per-level coefficient sums."""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.stats import linregress

from src.config import get_config
from src.errors import InsufficientDataError
from src.wavelet.types import WaveletCoefficients

from .norms import lp_sum
from .types import SmoothnessEstimate, SmoothnessScale

logger = logging.getLogger(__name__)


def _fit_levels(
    sums: np.ndarray, exclude_coarse: int, exclude_finest: int, min_levels: int
) -> Tuple[float, float, Tuple[int, int]]:
    """Decay exponent β of sums ≈ C·2^{-jβ} over the window, with R²."""
    sums = np.asarray(sums, dtype=float)
    last = len(sums) - 1 - exclude_finest
    j = np.arange(exclude_coarse, last + 1)
    j = j[sums[j] > 0] if len(j) else j
    if len(j) < min_levels:
        raise InsufficientDataError(
            f"Need {min_levels} levels with nonzero sums in the fit window, got {len(j)}"
        )
    fit = linregress(j, np.log2(sums[j]))
    return float(-fit.slope), float(fit.rvalue**2), (int(j[0]), int(j[-1]))


def estimate_from_level_sums(
    sums: Sequence[float],
    p: float,
    d: int,
    exclude_coarse: Optional[int] = None,
    exclude_finest: Optional[int] = None,
    min_levels: Optional[int] = None,
) -> SmoothnessEstimate:
    """
    Sobolev-scale estimate from level sums (Σ_{D_j}|c|^p)^{1/p} ≈ 2^{-jβ}:
    s_est = β - d(1/2 - 1/p), clipped at 0 for non-decaying sums.
    """
    config = get_config()
    exclude_coarse = config.FIT_EXCLUDE_COARSE if exclude_coarse is None else exclude_coarse
    exclude_finest = config.FIT_EXCLUDE_FINEST if exclude_finest is None else exclude_finest
    min_levels = config.FIT_MIN_LEVELS if min_levels is None else min_levels

    beta, r_squared, window = _fit_levels(sums, exclude_coarse, exclude_finest, min_levels)
    s_est = beta - d * (0.5 - 1.0 / p)
    diagnostic = None
    if beta <= 0 or s_est < 0:
        diagnostic = f"non-decaying level sums (β={beta:.4f})"
        logger.warning(f"Smoothness estimate clipped to 0: {diagnostic}")
        s_est = 0.0
    return SmoothnessEstimate(
        scale=SmoothnessScale.SOBOLEV,
        p=p,
        s_est=float(s_est),
        r_squared=r_squared,
        window=window,
        beta=beta,
        level_sums=[float(v) for v in sums],
        diagnostic=diagnostic,
    )


def _masked_levels(coeffs: WaveletCoefficients, mask: Optional[np.ndarray]):
    table = coeffs.entries()
    keep = table.kind > 0
    if mask is not None:
        keep &= np.asarray(mask, dtype=bool)
    return [np.abs(table.value[keep & (table.level == j)]) for j in range(coeffs.max_level + 1)]


def estimate_smoothness(
    coeffs: WaveletCoefficients,
    p: float = 2.0,
    d: Optional[int] = None,
    scale: SmoothnessScale = SmoothnessScale.SOBOLEV,
    mask: Optional[np.ndarray] = None,
    exclude_coarse: Optional[int] = None,
    exclude_finest: Optional[int] = None,
    min_levels: Optional[int] = None,
    s_max: Optional[float] = None,
) -> SmoothnessEstimate:
    """
    Largest s for which the weighted level sums of the coefficients stay bounded.

    Sobolev scale: regress log2 of (Σ_{D_j}|c|^p)^{1/p} on j; s = β - d(1/2 - 1/p).
    Adaptivity scale: for each s the sums 2^{jd(1/2 - 1/p)}(Σ_{D_j}|c|^τ)^{1/τ} with
    1/τ = s/d + 1/p are fitted; the estimate is the root of the fitted decay exponent
    in [0, s_max] (s_max defaults to the filter order r).

    Args:
        coeffs: wavelet coefficients of the function
        p: integrability (the target L_p metric on the adaptivity scale)
        d: dimension, defaults to the coefficients' dimension
        scale: which scale to estimate on
        mask: optional selection aligned with coeffs.entries()
    """
    d = coeffs.d if d is None else d
    config = get_config()
    exclude_coarse = config.FIT_EXCLUDE_COARSE if exclude_coarse is None else exclude_coarse
    exclude_finest = config.FIT_EXCLUDE_FINEST if exclude_finest is None else exclude_finest
    min_levels = config.FIT_MIN_LEVELS if min_levels is None else min_levels
    levels = _masked_levels(coeffs, mask)

    if scale is SmoothnessScale.SOBOLEV:
        sums = np.array([lp_sum(c, p) for c in levels])
        return estimate_from_level_sums(sums, p, d, exclude_coarse, exclude_finest, min_levels)

    s_max = float(coeffs.system.order) if s_max is None else s_max
    j = np.arange(len(levels))

    def weighted_sums(s: float) -> np.ndarray:
        tau = 1.0 / (s / d + 1.0 / p)
        return 2.0 ** (j * d * (0.5 - 1.0 / p)) * np.array([lp_sum(c, tau) for c in levels])

    def decay(s: float) -> float:
        return _fit_levels(weighted_sums(s), exclude_coarse, exclude_finest, min_levels)[0]

    diagnostic = None
    low, high = decay(0.0), decay(s_max)
    if low <= 0:
        s_est = 0.0
        diagnostic = f"non-decaying level sums at s=0 (β={low:.4f})"
        logger.warning(f"Adaptivity estimate clipped to 0: {diagnostic}")
    elif high >= 0:
        s_est = s_max
        diagnostic = f"level sums still decay at s_max={s_max}; estimate capped"
        logger.info(diagnostic)
    else:
        s_est = brentq(decay, 0.0, s_max, xtol=1e-10)

    beta, r_squared, window = _fit_levels(
        weighted_sums(s_est), exclude_coarse, exclude_finest, min_levels
    )
    return SmoothnessEstimate(
        scale=SmoothnessScale.ADAPTIVITY,
        p=p,
        s_est=float(s_est),
        r_squared=r_squared,
        window=window,
        beta=beta,
        level_sums=[float(v) for v in weighted_sums(s_est)],
        diagnostic=diagnostic,
    )


def besov_membership_ceiling(gamma: float, m: int, delta: int) -> float:
    """min(γ, 3m/δ); for isolated vertex singularities (δ = 0) only γ binds."""
    if delta == 0:
        return float(gamma)
    return float(min(gamma, 3.0 * m / delta))


def tau_window(alpha: float, d: int) -> Tuple[float, float]:
    """Range 1/2 < 1/τ < α/d + 1/2 of the adaptivity scale reached for L_2 targets."""
    return 0.5, alpha / d + 0.5

