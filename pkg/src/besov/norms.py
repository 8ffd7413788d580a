"""Besov quasi-norms from wavelet coefficients."""

import logging
from typing import Optional

import numpy as np

from src.errors import ParameterError
from src.wavelet.types import WaveletCoefficients

from .types import AdaptivityScalePoint, BesovParams

logger = logging.getLogger(__name__)


def lp_sum(values: np.ndarray, p: float) -> float:
    """(Σ|c|^p)^{1/p}, zero for empty input."""
    values = np.abs(np.asarray(values, dtype=float))
    if values.size == 0 or not values.any():
        return 0.0
    # scale by the max so small p does not underflow
    top = values.max()
    return float(top * np.sum((values / top) ** p) ** (1.0 / p))


def level_sums(
    coeffs: WaveletCoefficients, p: float, mask: Optional[np.ndarray] = None
) -> np.ndarray:
    """
    (Σ_{D_j × Ψ'} |c|^p)^{1/p} per detail level j. `mask` is aligned with
    `coeffs.entries()` and restricts which coefficients count.
    """
    table = coeffs.entries()
    keep = table.kind > 0
    if mask is not None:
        keep &= np.asarray(mask, dtype=bool)
    sums = np.zeros(coeffs.max_level + 1)
    for j in range(coeffs.max_level + 1):
        sums[j] = lp_sum(table.value[keep & (table.level == j)], p)
    return sums


def besov_quasinorm(
    coeffs: WaveletCoefficients, params: BesovParams, check_hypothesis: bool = True
) -> float:
    """
    ‖f|B^s_{p,q}‖ ≍ (Σ_k|⟨f,φ_k⟩|^p)^{1/p}
        + (Σ_j 2^{j(s + d(1/2 - 1/p))q} (Σ_{D_j×Ψ'}|⟨f,ψ_I⟩|^p)^{q/p})^{1/q}

    When p = q the two parts are combined in ℓ_p instead of added, so p = q = 2 at
    formal s = 0 is the ℓ_2 norm of all coefficients. check_hypothesis=False allows
    formal evaluations outside s > max(0, d(1/p - 1)).
    """
    if check_hypothesis and not params.hypothesis_holds:
        raise ParameterError(
            f"s={params.s} violates s > max(0, d(1/p - 1)) for p={params.p}, d={params.d}"
        )
    scaling_part = lp_sum(coeffs.scaling.ravel(), params.p)
    sums = level_sums(coeffs, params.p)
    j = np.arange(len(sums))
    weighted = 2.0 ** (j * params.level_exponent) * sums
    detail_part = lp_sum(weighted, params.q)
    if params.p == params.q:
        return lp_sum(np.array([scaling_part, detail_part]), params.p)
    return scaling_part + detail_part


def adaptivity_norm(coeffs: WaveletCoefficients, point: AdaptivityScalePoint) -> float:
    """Quasi-norm of B^s_{τ,τ}, 1/τ = s/d + 1/p; the level weight is 2^{jd(1/2 - 1/p)}."""
    return besov_quasinorm(coeffs, point.as_besov())
