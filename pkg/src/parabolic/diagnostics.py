"""Coercivity, compatibility and manufactured-solution diagnostics for the linear solver."""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import lobpcg

from src.config import get_config
from src.errors import ParameterError
from src.geometry.grid import MaskedGrid, make_grid

from .assembly import Assembler
from .solver import rothe_solve, time_grid
from .types import CoercivityEstimate, ErrorTable, ParabolicProblem, Scheme, SpaceTimeFunction

logger = logging.getLogger(__name__)

DENSE_LIMIT = 2000


def _smallest_rayleigh_quotient(matrix, gram, rng) -> float:
    """min u^T M u / u^T G u over interior vectors, M the symmetric part."""
    symmetric = 0.5 * (matrix + matrix.T)
    n = symmetric.shape[0]
    if n <= DENSE_LIMIT:
        values = scipy.linalg.eigh(
            symmetric.toarray(), gram.toarray(), eigvals_only=True, subset_by_index=[0, 0]
        )
        return float(values[0])
    start = rng.standard_normal((n, 4))
    values, _ = lobpcg(symmetric, start, B=gram, largest=False, tol=1e-8, maxiter=500)
    return float(np.min(values))


def coercivity_margin(
    problem: ParabolicProblem,
    h: float,
    samples: int = 8,
    seed: Optional[int] = None,
) -> CoercivityEstimate:
    """
    Estimate μ in B(t, u, u) ≥ μ‖u‖²_{H¹} by minimising the discrete Rayleigh quotient
    at `samples` times spread over [0, T], starting from random vectors.
    """
    if samples < 1:
        raise ParameterError("Need at least one coercivity sample")
    config = get_config()
    rng = np.random.default_rng(config.DEFAULT_SEED if seed is None else seed)
    grid = make_grid(problem.domain, h)
    assembler = Assembler(grid)
    gram = assembler.h1_gram()

    times = np.linspace(0.0, problem.final_time, samples) if samples > 1 else np.array([0.0])
    best_mu, best_t = math.inf, 0.0
    for t in times:
        mu = _smallest_rayleigh_quotient(assembler.matrix(problem.coefficients, t), gram, rng)
        logger.debug(f"Rayleigh quotient at t={t:.4f}: {mu:.8f}")
        if mu < best_mu:
            best_mu, best_t = mu, float(t)
    logger.info(f"Coercivity margin for '{problem.name}': μ ≈ {best_mu:.6f} at t={best_t:.4f}")
    return CoercivityEstimate(mu=best_mu, t_at_min=best_t, samples=len(times))


def _derivative_weights(order: int, step: float, points: int) -> np.ndarray:
    """One-sided weights w with Σ w_i p(i·step) = p^{(order)}(0) for deg p < points."""
    vandermonde = np.vander(np.arange(points, dtype=float), points, increasing=True).T
    target = np.zeros(points)
    target[order] = math.factorial(order)
    return np.linalg.solve(vandermonde, target) / step**order


def compatibility_residuals(
    forcing: SpaceTimeFunction,
    grid: MaskedGrid,
    gamma_m: int,
    step: float = 1e-3,
) -> List[float]:
    """Discrete L2 norms of ∂_t^k f(·, 0), k = 0..γ_m, by one-sided finite differences in t."""
    if gamma_m < 0:
        raise ParameterError(f"γ_m must be nonnegative, got {gamma_m}")
    points = gamma_m + 4
    samples = [np.where(grid.interior, forcing(i * step, grid.X, grid.Y), 0.0) for i in range(points)]
    residuals = []
    for k in range(gamma_m + 1):
        weights = _derivative_weights(k, step, points)
        derivative = sum(w * s for w, s in zip(weights, samples))
        residuals.append(grid.l2_norm(derivative))
    logger.debug(f"Compatibility residuals up to k={gamma_m}: {residuals}")
    return residuals


def _check_manufactured(problem: ParabolicProblem, grid: MaskedGrid, times: Sequence[float]):
    boundary = grid.closed & ~grid.interior
    for t in times:
        values = problem.exact(t, grid.X, grid.Y)
        if np.max(np.abs(values[boundary]), initial=0.0) > 1e-12:
            raise ParameterError(f"Manufactured solution of '{problem.name}' is nonzero on the boundary at t={t}")
    initial = np.max(np.abs(problem.exact(0.0, grid.X, grid.Y)[grid.closed]))
    if initial > 1e-12 and problem.initial is None:
        raise ParameterError(f"Manufactured solution of '{problem.name}' is nonzero at t=0")


def mms_error(
    problem: ParabolicProblem,
    h: float,
    dt: float,
    scheme: Scheme = Scheme.IMPLICIT_EULER,
) -> ErrorTable:
    """L2_h errors against the manufactured solution at every time level."""
    if problem.exact is None:
        raise ParameterError(f"Problem '{problem.name}' has no manufactured solution")
    grid = make_grid(problem.domain, h)
    _check_manufactured(problem, grid, time_grid(problem.final_time, dt))
    solution = rothe_solve(problem, h, dt, scheme=scheme, grid=grid)

    errors = np.array(
        [
            grid.l2_norm(u - problem.exact(t, grid.X, grid.Y))
            for t, u in zip(solution.times, solution.snapshots)
        ]
    )
    table = ErrorTable(times=solution.times, errors=errors)
    logger.info(f"MMS '{problem.name}' h={h}: max error {table.max_error:.3e}, L2-time {table.l2_time_error:.3e}")
    return table


def observed_order(errors: Sequence[float], ratio: float = 2.0) -> List[float]:
    """log_ratio(e_i / e_{i+1}) for successive refinements."""
    return [math.log(a / b, ratio) for a, b in zip(errors, errors[1:])]
