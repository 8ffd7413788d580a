"""Banach iteration u_{n+1} = L̃⁻¹(f - ε u_n^M) around the linear solution."""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from src.errors import FixedPointDivergenceError, InsufficientDataError, SmallnessError
from src.geometry.grid import make_grid
from src.parabolic import DiscreteSolution, ParabolicProblem, Scheme, discrete_residual, time_grid
from src.utils.format_utils import PathLike, write_csv

from .norms import apply_inverse, s_norm
from .smallness import smallness_check
from .types import ContractionReport, FixedPointConfig, IterationHistory

logger = logging.getLogger(__name__)

DIVERGENCE_STREAK = 3


def _nonlinear_forcing(forcing, snapshots, interior, epsilon: float, power: int):
    if epsilon == 0:
        return list(forcing)
    return [f - epsilon * np.where(interior, u**power, 0.0) for f, u in zip(forcing, snapshots)]


def fixed_point_solve(
    problem: ParabolicProblem,
    config: FixedPointConfig,
    h: float,
    dt: float,
    scheme: Scheme = Scheme.IMPLICIT_EULER,
    initial_iterate: Optional[Sequence[np.ndarray]] = None,
) -> Tuple[DiscreteSolution, IterationHistory]:
    """
    Start from u_0 = L̃⁻¹f (or `initial_iterate`) and iterate until the S-norm step
    drops below config.tol. Each application of L̃⁻¹ is one Rothe solve.
    """
    verdict = smallness_check(config)
    if not verdict.passed:
        if not config.override:
            raise SmallnessError(
                f"Smallness condition {verdict.branch} fails: {verdict.lhs:.6g} vs {verdict.rhs:.6g}"
            )
        logger.warning(f"Smallness condition {verdict.branch} fails; iterating anyway (override)")

    grid = make_grid(problem.domain, h)
    times = time_grid(problem.final_time, dt)
    forcing = [problem.forcing_values(t, grid) for t in times]
    eps, M = config.epsilon, config.power

    linear = apply_inverse(problem, grid, dt, forcing, scheme)
    current = linear if initial_iterate is None else DiscreteSolution(grid, times, list(initial_iterate), scheme)

    def residual(solution: DiscreteSolution) -> float:
        return discrete_residual(
            solution, problem, _nonlinear_forcing(forcing, solution.snapshots, grid.interior, eps, M)
        )

    def ball_distance(solution: DiscreteSolution) -> float:
        return s_norm([u - v for u, v in zip(solution.snapshots, linear.snapshots)], grid, times)

    history = IterationHistory(
        iterates=[current], residuals=[residual(current)], ball_distances=[ball_distance(current)]
    )
    logger.info(f"Fixed-point iteration for '{problem.name}': ε={eps}, M={M}, tol={config.tol}")

    streak = 0
    for n in range(config.maxiter):
        rhs = _nonlinear_forcing(forcing, current.snapshots, grid.interior, eps, M)
        following = apply_inverse(problem, grid, dt, rhs, scheme)
        step = s_norm([u - v for u, v in zip(following.snapshots, current.snapshots)], grid, times)

        history.iterates.append(following)
        history.step_norms.append(step)
        history.residuals.append(residual(following))
        history.ball_distances.append(ball_distance(following))
        logger.debug(
            f"iteration {n + 1}: step={step:.3e}, residual={history.residuals[-1]:.3e}, "
            f"ball distance={history.ball_distances[-1]:.3e}"
        )

        if len(history.step_norms) > 1 and step > history.step_norms[-2]:
            streak += 1
        else:
            streak = 0
        if streak >= DIVERGENCE_STREAK:
            raise FixedPointDivergenceError(
                f"Step norms grew for {DIVERGENCE_STREAK} consecutive iterations (last {step:.3e})", history
            )

        current = following
        if step < config.tol:
            logger.info(f"Converged after {n + 1} iterations: step {step:.3e}")
            break
    else:
        logger.warning(f"No convergence within {config.maxiter} iterations (last step {step:.3e})")

    return current, history


def contraction_and_ball_report(history: IterationHistory, config: FixedPointConfig) -> ContractionReport:
    """Empirical q = max step_{n+1}/step_n and whether every iterate stayed within R of u_lin."""
    if len(history.ball_distances) < 2:
        raise InsufficientDataError("Need at least two iterates for a contraction report")
    ratios = [b / a for a, b in zip(history.step_norms, history.step_norms[1:]) if a > 0]
    q = max(ratios) if ratios else 0.0
    radius = config.radius
    furthest = max(history.ball_distances)
    report = ContractionReport(
        q=q,
        contracting=q < 1,
        radius=radius,
        max_ball_distance=furthest,
        inside_ball=furthest <= radius,
    )
    logger.info(f"Contraction q={q:.4g}, R={radius:.4g}, max distance {furthest:.4g}")
    return report


def write_history(history: IterationHistory, path: PathLike):
    return write_csv(path, ["n", "step_norm", "residual", "ball_distance"], history.rows())
