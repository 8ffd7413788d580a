"""Weighted Sobolev (Kondratiev) norms by composite quadrature."""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import roots_legendre

from src.config import get_config
from src.errors import NumericalDiagnosticError, OrderingError, ParameterError
from src.geometry.domains import distance_weight_array
from src.geometry.types import PolygonalDomain

from .derivatives import fd_derivative
from .functions import multiply_grid_functions
from .types import (
    GridFunction,
    KondratievNormResult,
    KondratievParams,
    MultiIndex,
    NormStatus,
)

logger = logging.getLogger(__name__)


def multi_indices(order: int) -> List[MultiIndex]:
    return [(order - i, i) for i in range(order + 1)]


def _weighted_integrand(
    params: KondratievParams, rho: np.ndarray, derivatives: dict
) -> np.ndarray:
    """Σ_{|α|≤m} ρ^{p(|α|-a)} |D^α u|^p."""
    total = np.zeros_like(rho)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for alpha, values in derivatives.items():
            order = alpha[0] + alpha[1]
            total = total + rho ** params.weight_exponent(order) * np.abs(values) ** params.p
    return total


def _analytic_integrand(u: GridFunction, params: KondratievParams, domain: PolygonalDomain):
    def integrand(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        rho = distance_weight_array(domain, X, Y)
        derivatives = {
            alpha: u.analytic.derivative(alpha, X, Y)
            for order in range(params.m + 1)
            for alpha in multi_indices(order)
        }
        return _weighted_integrand(params, rho, derivatives)

    return integrand


def _gauss_square(integrand, x0: float, y0: float, size: float, points: int) -> float:
    nodes, weights = roots_legendre(points)
    xs = x0 + 0.5 * size * (nodes + 1.0)
    ys = y0 + 0.5 * size * (nodes + 1.0)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    W = np.outer(weights, weights) * (0.5 * size) ** 2
    return float(np.sum(W * integrand(X, Y)))


def refine_singular_cell(
    integrand,
    corner: Tuple[float, float],
    direction: Tuple[int, int],
    size: float,
    tol: float,
    max_depth: int,
    points: int,
) -> Tuple[float, int, bool]:
    """
    Integrate over the square of side `size` with the singular point at `corner`,
    extending in `direction` (±1, ±1). Each level integrates the three children away
    from the corner and recurses into the corner child.

    Returns:
        (integral, depth reached, divergent flag)
    """
    cx, cy = corner
    sx, sy = direction
    total = 0.0
    increments: List[float] = []
    for depth in range(max_depth):
        half = size / 2.0
        increment = 0.0
        for ix, iy in ((1, 0), (0, 1), (1, 1)):
            # lower-left corner of the child in absolute coordinates
            x_lo = cx + sx * ix * half if sx > 0 else cx - (ix + 1) * half
            y_lo = cy + sy * iy * half if sy > 0 else cy - (iy + 1) * half
            increment += _gauss_square(integrand, x_lo, y_lo, half, points)
        if not math.isfinite(increment):
            return math.inf, depth + 1, True
        increments.append(increment)
        total += increment
        size = half

        if increment <= tol * abs(total):
            break
    else:
        # depth cap reached
        if len(increments) >= 2 and increments[-1] >= increments[-2]:
            logger.debug(f"Increments stopped decreasing at depth {max_depth}: divergent")
            return math.inf, max_depth, True

    if len(increments) >= 2 and increments[-2] > 0:
        ratio = increments[-1] / increments[-2]
        if 0 < ratio < 1:
            total += increments[-1] * ratio / (1.0 - ratio)
    return total, len(increments), False


def _singular_cells(grid, domain: PolygonalDomain) -> List[Tuple[int, int, Tuple[float, float]]]:
    """(ix, iy, singular point) for domain cells having a singular point as a corner."""
    found = []
    h = grid.h
    for px, py in domain.singular_points:
        ix = int(round((px - grid.x[0]) / h))
        iy = int(round((py - grid.y[0]) / h))
        for cx in (ix - 1, ix):
            for cy in (iy - 1, iy):
                if 0 <= cx < grid.cells.shape[0] and 0 <= cy < grid.cells.shape[1] and grid.cells[cx, cy]:
                    found.append((cx, cy, (float(px), float(py))))
    return found


def kondratiev_norm(
    u: GridFunction,
    params: KondratievParams,
    tol: Optional[float] = None,
    max_depth: Optional[int] = None,
) -> KondratievNormResult:
    """
    ‖u|K^m_{p,a}‖ = (Σ_{|α|≤m} ∫ ρ^{p(|α|-a)} |D^α u|^p dx)^{1/p}.

    Composite midpoint rule over the domain cells. With analytic derivatives, cells
    touching a singular point are refined dyadically towards it (Gauss–Legendre on
    the children, geometric tail once increments decrease); a sum whose increments
    stop decreasing at the depth cap is reported as DIVERGENT. Without analytic
    derivatives the midpoint values come from centred finite differences.
    """
    config = get_config()
    tol = config.KONDRATIEV_REFINE_TOL if tol is None else tol
    max_depth = config.KONDRATIEV_MAX_DEPTH if max_depth is None else max_depth
    grid = u.grid
    domain = grid.domain
    h = grid.h
    XC, YC = np.meshgrid(grid.x[:-1] + h / 2, grid.y[:-1] + h / 2, indexing="ij")
    cells = grid.cells.copy()
    depth_reached = 0
    singular_total = 0.0

    if u.analytic is not None:
        integrand = _analytic_integrand(u, params, domain)
        for ix, iy, point in _singular_cells(grid, domain):
            cells[ix, iy] = False
            direction = (
                1 if XC[ix, iy] > point[0] else -1,
                1 if YC[ix, iy] > point[1] else -1,
            )
            value, depth, divergent = refine_singular_cell(
                integrand, point, direction, h, tol, max_depth, config.GAUSS_POINTS
            )
            depth_reached = max(depth_reached, depth)
            if divergent:
                logger.info(f"K^{params.m}_{{{params.p},{params.a}}} norm diverges near {point}")
                return KondratievNormResult(
                    m=params.m,
                    p=params.p,
                    a=params.a,
                    value=math.inf,
                    status=NormStatus.DIVERGENT,
                    cells=int(grid.cells.sum()),
                    refinement_depth=depth,
                )
            singular_total += value
        regular = integrand(XC[cells], YC[cells])
    else:
        # bilinear average of nodal FD derivatives gives the midpoint values
        derivatives = {}
        for order in range(params.m + 1):
            for alpha in multi_indices(order):
                nodal = fd_derivative(u, alpha)
                mid = 0.25 * (nodal[:-1, :-1] + nodal[1:, :-1] + nodal[:-1, 1:] + nodal[1:, 1:])
                derivatives[alpha] = mid[cells]
        rho = distance_weight_array(domain, XC[cells], YC[cells])
        regular = _weighted_integrand(params, rho, derivatives)

    total = float(np.sum(regular) * h**2) + singular_total
    value = total ** (1.0 / params.p) if math.isfinite(total) else math.inf
    status = NormStatus.FINITE if math.isfinite(value) else NormStatus.DIVERGENT
    logger.debug(
        f"K^{params.m}_{{{params.p},{params.a}}} norm: {value:.6g} over {int(grid.cells.sum())} cells"
    )
    return KondratievNormResult(
        m=params.m,
        p=params.p,
        a=params.a,
        value=value,
        status=status,
        cells=int(grid.cells.sum()),
        refinement_depth=depth_reached,
    )


def time_kondratiev_norm(
    snapshots: Sequence[Tuple[float, GridFunction]],
    params: KondratievParams,
    q: float = 2.0,
) -> float:
    """‖u|L_q((0,T), K^m_{p,a})‖ by the composite trapezoid rule in time."""
    if len(snapshots) == 0:
        return 0.0
    times = np.array([t for t, _ in snapshots], dtype=float)
    if np.any(np.diff(times) <= 0):
        raise OrderingError("Snapshot times must be strictly increasing")
    norms = np.array([kondratiev_norm(u, params).value for _, u in snapshots])
    if not np.all(np.isfinite(norms)):
        return math.inf
    if len(times) == 1:
        return 0.0
    return float(trapezoid(norms**q, times) ** (1.0 / q))


def algebra_regime(params: KondratievParams, d: int) -> bool:
    """m > d/p and a ≥ d/p: K^m_{p,a} is closed under pointwise products."""
    return params.m > d / params.p and params.a >= d / params.p


def product_norm_ratio(u: GridFunction, v: GridFunction, params: KondratievParams) -> float:
    """‖uv‖ / (‖u‖·‖v‖), an empirical lower bound for the algebra constant."""
    d = u.grid.domain.dimension
    if not algebra_regime(params, d):
        logger.warning(
            f"(m={params.m}, a={params.a}, p={params.p}) is outside the multiplication-algebra "
            f"regime m > d/p, a ≥ d/p for d={d}"
        )
    norm_u = kondratiev_norm(u, params)
    norm_v = kondratiev_norm(v, params)
    if not (norm_u.is_finite and norm_v.is_finite):
        raise NumericalDiagnosticError("Factor norm is divergent; the ratio is undefined")
    if norm_u.value == 0 or norm_v.value == 0:
        raise ParameterError("Ratio is undefined for a zero factor")
    norm_uv = kondratiev_norm(multiply_grid_functions(u, v), params)
    return norm_uv.value / (norm_u.value * norm_v.value)


def kondratiev_threshold(exponent: float, p: float, d: int = 2) -> float:
    """
    Largest weight a for which r^λ-type singular functions have finite K^m_{p,a}
    norm: every term behaves like ∫ r^{p(λ-a)} r^{d-1} dr, finite iff a < λ + d/p.
    """
    return exponent + d / p


def radial_integral_converges(exponent: float, params: KondratievParams, d: int = 2) -> bool:
    return params.a < kondratiev_threshold(exponent, params.p, d)
