"""Cascade evaluation of φ and ψ at dyadic points, and moment residuals."""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space

from .types import SQRT2, WaveletSystem

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 12


def _integer_values(h: np.ndarray) -> np.ndarray:
    """φ(n) for n = 0..L-1, normalised to Σφ(n) = 1."""
    length = len(h)
    if length == 2:
        # Haar: φ = 1 on [0, 1)
        return np.array([1.0, 0.0])

    # φ(n) = √2 Σ_k h_k φ(2n - k) on the interior integers 1..L-2
    interior = np.arange(1, length - 1)
    M = np.zeros((len(interior), len(interior)))
    for row, n in enumerate(interior):
        for col, m in enumerate(interior):
            k = 2 * n - m
            if 0 <= k < length:
                M[row, col] = SQRT2 * h[k]
    vector = null_space(M - np.eye(len(interior)))[:, 0]
    values = np.zeros(length)
    values[1:-1] = vector / vector.sum()
    return values


def _refine(h: np.ndarray, values: np.ndarray, q: int) -> np.ndarray:
    """Values at spacing 2^{-(q+1)} from values at spacing 2^{-q}."""
    length = len(h)
    size = (length - 1) * 2 ** (q + 1) + 1
    i = np.arange(size)
    out = np.zeros(size)
    for k, hk in enumerate(h):
        src = i - k * 2**q
        valid = (src >= 0) & (src < len(values))
        out[valid] += SQRT2 * hk * values[src[valid]]
    return out


def scaling_function_values(system: WaveletSystem, depth: int = DEFAULT_DEPTH) -> Tuple[np.ndarray, np.ndarray]:
    """(y, φ(y)) at y = i·2^{-depth} over [0, L-1]."""
    h = system.lowpass
    values = _integer_values(h)
    for q in range(depth):
        values = _refine(h, values, q)
    y = np.arange(len(values)) / 2.0**depth
    return y, values


def wavelet_function_values(system: WaveletSystem, depth: int = DEFAULT_DEPTH) -> Tuple[np.ndarray, np.ndarray]:
    """(y, ψ(y)) at y = i·2^{-depth}, with ψ(y) = √2 Σ g_k φ(2y - k)."""
    _, phi = scaling_function_values(system, depth)
    g = system.highpass
    size = len(phi)
    i = np.arange(size)
    psi = np.zeros(size)
    for k, gk in enumerate(g):
        src = 2 * i - k * 2**depth
        valid = (src >= 0) & (src < size)
        psi[valid] += SQRT2 * gk * phi[src[valid]]
    y = np.arange(size) / 2.0**depth
    return y, psi


def refinement_gap(system: WaveletSystem, depth: int = 8) -> float:
    """Max difference of ψ between depths `depth` and `depth + 1` at shared points."""
    _, coarse = wavelet_function_values(system, depth)
    _, fine = wavelet_function_values(system, depth + 1)
    return float(np.max(np.abs(fine[::2] - coarse)))


def _moment(y: np.ndarray, values: np.ndarray, power: int, step: float) -> float:
    return float(np.sum(values * y**power) * step)


def vanishing_moment_residual(
    system: WaveletSystem,
    alpha: Sequence[int],
    wavelet_type: Optional[int] = None,
    depth: int = DEFAULT_DEPTH,
) -> float:
    """
    ∫ x^α ψ(x) dx by a dyadic Riemann sum over cascade values.

    For d > 1 the tensor wavelet of type t is a product of φ and ψ factors, so the
    moment is the product of one-dimensional moments. Without `wavelet_type` the
    residual of largest magnitude over all types is returned.
    """
    alpha = tuple(int(a) for a in alpha)
    step = 2.0**-depth
    y, phi = scaling_function_values(system, depth)
    _, psi = wavelet_function_values(system, depth)

    keys = system.detail_keys
    if len(alpha) != len(keys[0]):
        raise ValueError(f"Multi-index {alpha} does not match dimension {len(keys[0])}")

    residuals = []
    for t, key in enumerate(keys, start=1):
        if wavelet_type is not None and t != wavelet_type:
            continue
        value = 1.0
        for axis_char, power in zip(key, alpha):
            value *= _moment(y, psi if axis_char == "d" else phi, power, step)
        residuals.append(value)

    residual = max(residuals, key=abs)
    logger.debug(f"Moment residual {system.family.label} α={alpha}: {residual:.3e}")
    return residual
