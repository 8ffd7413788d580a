"""Periodized multilevel transforms on dyadic boxes (PyWavelets backend)."""

import logging
import math
import warnings
from typing import Optional, Sequence, Tuple

import numpy as np
import pywt

from src.errors import GridShapeError, LevelError
from src.geometry.grid import MaskedGrid

from .types import WaveletCoefficients, WaveletSystem

logger = logging.getLogger(__name__)

MODE = "periodization"


def _dyadic_exponent(value: float, what: str) -> int:
    exponent = math.log2(value)
    if abs(exponent - round(exponent)) > 1e-12:
        raise GridShapeError(f"{what} {value} is not a power of two")
    return int(round(exponent))


def transform_box(grid: MaskedGrid) -> Tuple[Tuple[int, int], int]:
    """Integer origin and power-of-two side of the box covering the grid's domain."""
    xmin, ymin, xmax, ymax = grid.domain.bounds
    origin = (int(math.floor(xmin)), int(math.floor(ymin)))
    extent = max(xmax - origin[0], ymax - origin[1])
    side = 1
    while side < extent - 1e-12:
        side *= 2
    return origin, side


def box_samples(grid: MaskedGrid, values: np.ndarray) -> Tuple[np.ndarray, Tuple[int, int], int]:
    """
    Place the closed-domain nodal values of a grid into the transform box,
    zero-extended. Returns (samples, origin, side).
    """
    origin, side = transform_box(grid)
    n = int(round(side / grid.h))
    samples = np.zeros((n, n))
    masked = np.where(grid.closed, values, 0.0)
    ox = int(round((grid.x[0] - origin[0]) / grid.h))
    oy = int(round((grid.y[0] - origin[1]) / grid.h))
    nx = min(masked.shape[0], n - ox)
    ny = min(masked.shape[1], n - oy)
    samples[ox : ox + nx, oy : oy + ny] = masked[:nx, :ny]
    # nodes on the far box faces fall outside; they are boundary nodes
    return samples, origin, side


def forward_transform(
    samples: np.ndarray,
    system: WaveletSystem,
    h: float,
    levels: Optional[int] = None,
    origin: Optional[Sequence[int]] = None,
) -> WaveletCoefficients:
    """
    Decompose samples on a dyadic grid of spacing h down to unit cubes.

    Args:
        samples: nodal values on the box, shape (n,)*d with n·h a power of two
        system: wavelet system of matching dimension
        h: grid spacing, a negative power of two
        levels: keep detail levels 0..levels (default: all, grid_level - 1)
        origin: integer lower corner of the box (default zeros)

    Returns:
        WaveletCoefficients of the function whose finest scaling coefficients are
        h^{d/2}·samples
    """
    samples = np.asarray(samples, dtype=float)
    d = system.d
    if samples.ndim != d or len(set(samples.shape)) != 1:
        raise GridShapeError(f"Expected a square {d}-dimensional array, got {samples.shape}")
    if not np.all(np.isfinite(samples)):
        raise GridShapeError("Samples must be finite")

    grid_level = -_dyadic_exponent(h, "Spacing")
    n = samples.shape[0]
    side = n * h
    _dyadic_exponent(side, "Box side")
    side = int(round(side))
    if grid_level < 1:
        raise LevelError(f"Spacing {h} leaves no detail levels")

    if levels is None:
        levels = grid_level - 1
    if not 0 <= levels < grid_level:
        raise LevelError(f"Level {levels} not available at grid level {grid_level}")

    with warnings.catch_warnings():
        # decomposing to unit cubes always exceeds pywt's boundary-effect level
        warnings.simplefilter("ignore", UserWarning)
        raw = pywt.wavedecn(
            samples * h ** (d / 2), system.pywt_wavelet, mode=MODE, level=grid_level
        )

    scaling = np.asarray(raw[0])
    details = tuple(dict(level) for level in raw[1 : levels + 2])
    origin = tuple(int(o) for o in (origin if origin is not None else (0,) * d))

    logger.debug(
        f"Forward transform: n={n}, grid level {grid_level}, kept levels 0..{levels}"
    )
    return WaveletCoefficients(
        scaling=scaling,
        details=details,
        origin=origin,
        side=side,
        grid_level=grid_level,
        system=system,
    )


def inverse_transform(coeffs: WaveletCoefficients, grid_level: Optional[int] = None) -> np.ndarray:
    """
    Synthesize nodal samples at spacing 2^{-grid_level} (default: the level the
    coefficients came from). Missing finer levels are zero.
    """
    if grid_level is None:
        grid_level = coeffs.grid_level
    if grid_level < coeffs.max_level + 1:
        raise LevelError(
            f"Resolution 2^-{grid_level} is below coefficient level {coeffs.max_level}"
        )

    details = list(coeffs.details)
    for j in range(len(details), grid_level):
        shape = (coeffs.side * 2**j,) * coeffs.d
        details.append({key: np.zeros(shape) for key in coeffs.detail_keys})

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        values = pywt.waverecn(
            [coeffs.scaling] + details, coeffs.system.pywt_wavelet, mode=MODE
        )
    h = 2.0**-grid_level
    return np.asarray(values) / h ** (coeffs.d / 2)


def unit_coefficients(
    system: WaveletSystem,
    side: int,
    grid_level: int,
    level: Optional[int] = None,
    kind: int = 0,
    index: Optional[Sequence[int]] = None,
) -> WaveletCoefficients:
    """
    Coefficient set with a single entry 1: the scaling function (kind 0) or a wavelet
    of type `kind` at `level`. The inverse transform of it gives samples of that
    basis function.
    """
    d = system.d
    index = tuple(index) if index is not None else (0,) * d
    scaling = np.zeros((side,) * d)
    details = tuple(
        {key: np.zeros((side * 2**j,) * d) for key in system.detail_keys}
        for j in range(grid_level)
    )
    if kind == 0:
        scaling[index] = 1.0
    else:
        if level is None or not 0 <= level < grid_level:
            raise LevelError(f"Level {level} not available at grid level {grid_level}")
        details[level][system.detail_keys[kind - 1]][index] = 1.0
    return WaveletCoefficients(
        scaling=scaling,
        details=details,
        origin=(0,) * d,
        side=side,
        grid_level=grid_level,
        system=system,
    )
