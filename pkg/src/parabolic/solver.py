"""Rothe time-marching for the linear problem: one elliptic solve per step."""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy.sparse.linalg import bicgstab, cg

from src.config import get_config
from src.errors import EllipticityError, ParameterError, SolverDiagnosticError
from src.geometry.grid import MaskedGrid, make_grid

from .assembly import Assembler
from .types import DiscreteSolution, OperatorCoefficients, ParabolicProblem, Scheme

logger = logging.getLogger(__name__)


def check_ellipticity(
    coefficients: OperatorCoefficients,
    grid: MaskedGrid,
    times: Sequence[float],
    floor: Optional[float] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> float:
    """
    Smallest eigenvalue of the principal matrix over sampled nodes and times.
    Raises EllipticityError when it falls below the floor.
    """
    config = get_config()
    floor = config.ELLIPTICITY_MIN if floor is None else floor
    samples = config.ELLIPTICITY_SAMPLES if samples is None else samples
    rng = np.random.default_rng(config.DEFAULT_SEED if seed is None else seed)

    X, Y = grid.X[grid.interior], grid.Y[grid.interior]
    if X.size > samples:
        pick = rng.choice(X.size, size=samples, replace=False)
        X, Y = X[pick], Y[pick]
    times = np.asarray(times, dtype=float)
    if times.size > samples:
        times = np.concatenate([[times[0], times[-1]], rng.choice(times, size=samples - 2, replace=False)])

    smallest = min(float(coefficients.smallest_principal_eigenvalue(t, X, Y).min()) for t in times)
    if smallest < floor:
        raise EllipticityError(
            f"Coefficients '{coefficients.name}' are not uniformly elliptic: "
            f"sampled eigenvalue {smallest:.3e} < {floor:.1e}"
        )
    return smallest


def time_grid(final_time: float, dt: float) -> np.ndarray:
    if dt <= 0:
        raise ParameterError(f"Time step must be positive, got {dt}")
    steps = max(1, int(round(final_time / dt)))
    if abs(steps * dt - final_time) > 1e-9 * final_time:
        logger.debug(f"Δt={dt} does not divide T={final_time}; using {steps} steps of {final_time / steps}")
    return np.linspace(0.0, final_time, steps + 1)


def _krylov_solve(matrix, rhs, x0, symmetric: bool, step: int):
    config = get_config()
    solver = cg if symmetric else bicgstab
    count = [0]

    def tick(_):
        count[0] += 1

    solution, info = solver(
        matrix, rhs, x0=x0, rtol=config.SOLVER_RTOL, atol=0.0, maxiter=config.SOLVER_MAXITER, callback=tick
    )
    if info != 0:
        name = "CG" if symmetric else "BiCGSTAB"
        reason = "did not converge" if info > 0 else "broke down"
        raise SolverDiagnosticError(f"{name} {reason} at step {step} (info={info})", info=info, step=step)
    return solution, count[0]


def rothe_solve(
    problem: ParabolicProblem,
    h: float,
    dt: float,
    scheme: Scheme = Scheme.IMPLICIT_EULER,
    forcing_steps: Optional[Sequence[np.ndarray]] = None,
    grid: Optional[MaskedGrid] = None,
) -> DiscreteSolution:
    """
    March (I + θΔt A^{n+1}) u^{n+1} = (I - (1-θ)Δt A^n) u^n + Δt(θ f^{n+1} + (1-θ) f^n)
    from u^0 = 0 (or the warm start). `forcing_steps` replaces the forcing callback
    with one nodal array per time level.
    """
    grid = make_grid(problem.domain, h) if grid is None else grid
    times = time_grid(problem.final_time, dt)
    dt = float(times[1] - times[0])
    if forcing_steps is not None and len(forcing_steps) != len(times):
        raise ParameterError(f"Need {len(times)} forcing arrays, got {len(forcing_steps)}")

    coefficients = problem.coefficients
    check_ellipticity(coefficients, grid, times)
    assembler = Assembler(grid)
    symmetric = not coefficients.has_first_order

    def forcing(n: int) -> np.ndarray:
        if forcing_steps is not None:
            return grid.gather(forcing_steps[n])
        return grid.gather(problem.forcing_values(times[n], grid))

    u = grid.zeros()
    if problem.initial is not None:
        u = np.where(grid.interior, problem.initial(grid.X, grid.Y), 0.0)
    vector = grid.gather(u)
    snapshots = [grid.scatter(vector)]
    iterations = []

    logger.info(
        f"Solving '{problem.name}' with {scheme.label}: h={grid.h}, Δt={dt:.3e}, "
        f"{len(times) - 1} steps, {grid.n_unknowns} unknowns"
    )
    A_old = assembler.matrix(coefficients, times[0])
    f_old = forcing(0)
    for n in range(1, len(times)):
        A_new = assembler.matrix(coefficients, times[n]) if _time_dependent(coefficients) else A_old
        f_new = forcing(n)
        matrix, rhs = scheme(A_new, A_old, vector, f_old, f_new, dt)
        if not np.any(rhs):
            vector, count = np.zeros_like(rhs), 0
        else:
            vector, count = _krylov_solve(matrix, rhs, vector, symmetric, n)
        iterations.append(count)
        logger.debug(f"step {n}: t={times[n]:.4f}, {count} Krylov iterations")
        snapshots.append(grid.scatter(vector))
        A_old, f_old = A_new, f_new

    logger.info(f"Finished '{problem.name}': max |u(T)| = {np.abs(snapshots[-1]).max():.6e}")
    return DiscreteSolution(grid=grid, times=times, snapshots=snapshots, scheme=scheme, iterations=iterations)


def _time_dependent(coefficients: OperatorCoefficients) -> bool:
    return any(callable(getattr(coefficients, entry)) for entry in ("a11", "a12", "a22", "b1", "b2", "c"))


def discrete_residual(
    solution: DiscreteSolution,
    problem: ParabolicProblem,
    forcing_steps: Optional[Sequence[np.ndarray]] = None,
) -> float:
    """Largest L2_h norm over steps of the residual of the time-discrete equation."""
    grid, times = solution.grid, solution.times
    assembler = Assembler(grid)
    theta = solution.scheme.theta
    worst = 0.0
    for n in range(1, len(times)):
        dt = times[n] - times[n - 1]
        u_new = grid.gather(solution.snapshots[n])
        u_old = grid.gather(solution.snapshots[n - 1])
        if forcing_steps is not None:
            f_new, f_old = grid.gather(forcing_steps[n]), grid.gather(forcing_steps[n - 1])
        else:
            f_new = grid.gather(problem.forcing_values(times[n], grid))
            f_old = grid.gather(problem.forcing_values(times[n - 1], grid))
        A_new = assembler.matrix(problem.coefficients, times[n])
        A_old = assembler.matrix(problem.coefficients, times[n - 1])
        r = (u_new - u_old) / dt + theta * (A_new @ u_new - f_new) + (1 - theta) * (A_old @ u_old - f_old)
        worst = max(worst, grid.h * float(np.linalg.norm(r)))
    return worst


def a_priori_ratio(
    solution: DiscreteSolution,
    problem: ParabolicProblem,
    forcing_steps: Optional[Sequence[np.ndarray]] = None,
) -> float:
    """‖u‖_{L2(0,T; H¹_h)} / ‖f‖_{L2(0,T; L2_h)}, both with the rectangle rule on the step grid."""
    grid, times = solution.grid, solution.times
    dt = np.diff(times)
    u_sq = sum(d * grid.h1_norm(u) ** 2 for d, u in zip(dt, solution.snapshots[1:]))
    if forcing_steps is None:
        forcing_steps = [problem.forcing_values(t, grid) for t in times]
    f_sq = sum(d * grid.l2_norm(f) ** 2 for d, f in zip(dt, forcing_steps[1:]))
    if f_sq == 0.0:
        raise ParameterError("Forcing vanishes; the a-priori ratio is undefined")
    return math.sqrt(u_sq / f_sq)
