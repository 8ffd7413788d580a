"""Second-order finite-difference derivatives on masked grids."""

import numpy as np

from .types import GridFunction, MultiIndex


def _shift(a: np.ndarray, k: int, axis: int, fill) -> np.ndarray:
    """out[i] = a[i + k] along axis, `fill` where i + k is out of range."""
    out = np.full_like(a, fill)
    n = a.shape[axis]
    if abs(k) >= n:
        return out
    src = [slice(None)] * a.ndim
    dst = [slice(None)] * a.ndim
    if k >= 0:
        src[axis], dst[axis] = slice(k, n), slice(0, n - k)
    else:
        src[axis], dst[axis] = slice(0, n + k), slice(-k, n)
    out[tuple(dst)] = a[tuple(src)]
    return out


def axis_derivative(values: np.ndarray, mask: np.ndarray, h: float, axis: int, order: int) -> np.ndarray:
    """
    First or second derivative along one axis: centred where both neighbours are in
    the mask, one-sided second-order stencils otherwise. Zero off the mask.
    """
    u = np.where(mask, values, 0.0)
    s = {k: _shift(u, k, axis, 0.0) for k in (-3, -2, -1, 1, 2, 3)}
    m = {k: _shift(mask, k, axis, False) for k in (-3, -2, -1, 1, 2, 3)}

    centred = m[-1] & m[1]
    forward = ~centred & m[1] & m[2]
    backward = ~centred & ~forward & m[-1] & m[-2]

    out = np.zeros_like(u)
    if order == 1:
        out = np.where(centred, (s[1] - s[-1]) / (2 * h), out)
        out = np.where(forward, (-3 * u + 4 * s[1] - s[2]) / (2 * h), out)
        out = np.where(backward, (3 * u - 4 * s[-1] + s[-2]) / (2 * h), out)
    elif order == 2:
        forward &= m[3]
        backward &= m[-3]
        out = np.where(centred, (s[1] - 2 * u + s[-1]) / h**2, out)
        out = np.where(forward, (2 * u - 5 * s[1] + 4 * s[2] - s[3]) / h**2, out)
        out = np.where(backward, (2 * u - 5 * s[-1] + 4 * s[-2] - s[-3]) / h**2, out)
    else:
        raise ValueError(f"Only orders 1 and 2 are supported per axis step, got {order}")
    return np.where(mask, out, 0.0)


def fd_derivative(u: GridFunction, alpha: MultiIndex) -> np.ndarray:
    """D^α u at the closed-domain nodes by repeated axis derivatives."""
    grid = u.grid
    values = np.where(grid.closed, u.values, 0.0)
    for axis, count in enumerate(alpha):
        while count > 0:
            step = 2 if count >= 2 else 1
            values = axis_derivative(values, grid.closed, grid.h, axis, step)
            count -= step
    return values
