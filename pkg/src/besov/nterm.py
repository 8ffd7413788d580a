"""Best N-term approximation in the weighted coefficient metric."""

import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import linregress

from src.errors import InsufficientDataError
from src.wavelet.types import CoefficientTable, WaveletCoefficients

from .types import NTermCurve, NTermResult, RateFit

logger = logging.getLogger(__name__)

Coefficients = Union[WaveletCoefficients, CoefficientTable, Sequence[float], np.ndarray]


def _as_table(coeffs: Coefficients) -> Tuple[CoefficientTable, int]:
    if isinstance(coeffs, WaveletCoefficients):
        return coeffs.entries(), coeffs.d
    if isinstance(coeffs, CoefficientTable):
        return coeffs, coeffs.k.shape[1]
    # bare values are treated as level-0 detail coefficients in 1D
    values = np.asarray(coeffs, dtype=float).ravel()
    n = len(values)
    table = CoefficientTable(
        level=np.zeros(n, dtype=int),
        kind=np.ones(n, dtype=int),
        k=np.arange(n).reshape(-1, 1),
        value=values,
    )
    return table, 1


def weighted_magnitudes(table: CoefficientTable, d: int, p: float) -> np.ndarray:
    """|I|^{1/2 - 1/p}·|c| = 2^{-jd(1/2 - 1/p)}·|c|; scaling coefficients carry weight 1."""
    weights = 2.0 ** (-table.level * d * (0.5 - 1.0 / p))
    weights = np.where(table.kind == 0, 1.0, weights)
    return weights * np.abs(table.value)


def greedy_order(table: CoefficientTable, magnitudes: np.ndarray) -> np.ndarray:
    """Indices by decreasing magnitude; ties broken by (j, type, k) ascending."""
    keys = [table.k[:, i] for i in range(table.k.shape[1] - 1, -1, -1)]
    keys += [table.kind, table.level, -magnitudes]
    return np.lexsort(keys)


def best_n_term(coeffs: Coefficients, n: int, p: float = 2.0) -> NTermResult:
    """
    Keep the n largest weighted coefficients. σ_n is the ℓ_p norm of the discarded
    weighted coefficients (exact best n-term error for p = 2).
    """
    if n < 0:
        raise ValueError(f"N must be nonnegative, got {n}")
    table, d = _as_table(coeffs)
    magnitudes = weighted_magnitudes(table, d, p)
    order = greedy_order(table, magnitudes)
    retained = np.sort(order[:n])
    discarded = magnitudes[order[n:]]
    sigma = float(np.sum(discarded**p) ** (1.0 / p)) if discarded.size else 0.0
    return NTermResult(n=n, sigma=sigma, retained=retained, p=p)


def n_term_curve(
    coeffs: Coefficients, p: float = 2.0, n_values: Optional[Sequence[int]] = None
) -> NTermCurve:
    """σ_N for every requested N from one sort (default N = 0..#coefficients)."""
    table, d = _as_table(coeffs)
    magnitudes = weighted_magnitudes(table, d, p)
    ordered = magnitudes[greedy_order(table, magnitudes)]
    powered = ordered**p
    # tail[N] = Σ_{i ≥ N} |w_i|^p
    tail = np.concatenate([np.cumsum(powered[::-1])[::-1], [0.0]])
    if n_values is None:
        n_values = np.arange(len(ordered) + 1)
    n_values = np.asarray(n_values, dtype=int)
    n_values = n_values[n_values <= len(ordered)]
    sigma = np.maximum(tail[n_values], 0.0) ** (1.0 / p)
    return NTermCurve(n=n_values, sigma=sigma, p=p)


def fit_rate(
    curve: NTermCurve, d: int, window: Optional[Tuple[float, float]] = None
) -> RateFit:
    """
    Least-squares slope of log σ_N against log N. Returns s_est = -slope·d and R².

    Args:
        curve: σ_N values
        d: spatial dimension
        window: inclusive (N_min, N_max) range of N used in the fit
    """
    n = np.asarray(curve.n, dtype=float)
    sigma = np.asarray(curve.sigma, dtype=float)
    use = (n > 0) & (sigma > 0)
    if window is not None:
        use &= (n >= window[0]) & (n <= window[1])
    if use.sum() < 4:
        raise InsufficientDataError(f"Need at least 4 positive curve points, got {int(use.sum())}")

    fit = linregress(np.log(n[use]), np.log(sigma[use]))
    s_est = -fit.slope * d
    r_squared = fit.rvalue**2
    used = n[use]
    logger.debug(f"N-term fit over N∈[{used.min():g}, {used.max():g}]: s={s_est:.4f}, R²={r_squared:.4f}")
    return RateFit(
        s_est=float(s_est),
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(r_squared),
        window=(float(used.min()), float(used.max())),
        points=int(use.sum()),
    )


def fraction_window(curve: NTermCurve, fractions: Tuple[float, float]) -> Tuple[float, float]:
    """N-window given as fractions of the coefficient count."""
    total = float(np.max(curve.n)) if len(curve.n) else 0.0
    return fractions[0] * total, fractions[1] * total


def running_rate(curve: NTermCurve, d: int, start: float = 1.0) -> np.ndarray:
    """
    Running estimate aligned with `curve.n`: entry N is the s_est of the log-log fit
    over the points start ≤ n ≤ N, NaN until four points are available.
    """
    n = np.asarray(curve.n, dtype=float)
    sigma = np.asarray(curve.sigma, dtype=float)
    use = (n >= max(start, 1.0)) & (sigma > 0)
    x = np.where(use, np.log(np.where(use, n, 1.0)), 0.0)
    y = np.where(use, np.log(np.where(use, sigma, 1.0)), 0.0)
    count = np.cumsum(use)
    sx, sy = np.cumsum(x), np.cumsum(y)
    sxx, sxy = np.cumsum(x * x), np.cumsum(x * y)
    denom = count * sxx - sx**2
    with np.errstate(divide="ignore", invalid="ignore"):
        slope = (count * sxy - sx * sy) / denom
    return np.where((count >= 4) & (denom > 0), -slope * d, np.nan)
