"""Physical supports of basis functions and the interior coefficient mask."""

from typing import Tuple

import numpy as np
import shapely

from src.errors import ParameterError
from src.geometry.types import PolygonalDomain

from .types import WaveletCoefficients

SUPPORT_TOL = 1e-12


def level_shift(coeffs: WaveletCoefficients, j: int) -> float:
    """
    Offset σ_j of the periodized pyramid: the basis function with box index o at
    level j is 2^{j/2}ψ(2^j(x - origin) - o + σ_j). σ is 0 at the sample level and
    σ_j = (s + σ_{j+1}) / 2 with s = L/2 - 1.
    """
    s = coeffs.system.pyramid_shift
    sigma = 0.0
    for _ in range(coeffs.grid_level - j):
        sigma = (s + sigma) / 2.0
    return sigma


def support_boxes(coeffs: WaveletCoefficients) -> Tuple[np.ndarray, np.ndarray]:
    """
    Lower and upper corners of every coefficient's support, aligned with
    `coeffs.entries()`. Supports that wrap around the periodic box are reported
    as +inf so they never count as interior.
    """
    table = coeffs.entries()
    L = coeffs.system.length
    origin = np.asarray(coeffs.origin, dtype=float)
    lower = np.empty((len(table), coeffs.d))
    upper = np.empty((len(table), coeffs.d))
    for j in np.unique(table.level):
        sel = table.level == j
        sigma = level_shift(coeffs, int(j))
        local = table.k[sel] - origin * 2**j
        lo = (local - sigma) / 2.0**j
        hi = (local - sigma + L - 1) / 2.0**j
        wraps = (lo < -SUPPORT_TOL) | (hi > coeffs.side + SUPPORT_TOL)
        hi = np.where(wraps, np.inf, hi)
        lower[sel] = origin + lo
        upper[sel] = origin + hi
    return lower, upper


def interior_mask(
    coeffs: WaveletCoefficients, domain: PolygonalDomain, keep_singular: bool = True
) -> np.ndarray:
    """
    True for coefficients whose basis function is supported in the closed domain.

    Supports that cross the boundary only see the kink of the zero extension along
    an edge and are dropped. With `keep_singular`, supports that contain a singular
    vertex are kept as well: they carry the corner singularity.
    """
    if coeffs.d != 2:
        raise ParameterError("Interior masks need two-dimensional coefficients")
    lower, upper = support_boxes(coeffs)
    finite = np.all(np.isfinite(upper), axis=1)
    mask = np.zeros(len(lower), dtype=bool)
    boxes = shapely.box(lower[finite, 0], lower[finite, 1], upper[finite, 0], upper[finite, 1])
    mask[finite] = shapely.covers(domain.shape, boxes)
    if keep_singular:
        for point in domain.singular_points:
            around = np.all((lower <= point + SUPPORT_TOL) & (upper >= point - SUPPORT_TOL), axis=1)
            mask |= finite & around
    return mask
