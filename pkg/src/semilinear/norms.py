"""Discrete surrogates for the solution and data norms, and the ‖L̃⁻¹‖ estimate."""

import logging
import math
from dataclasses import replace
from typing import Callable, List, Optional, Sequence

import numpy as np

from src.config import get_config
from src.errors import ParameterError
from src.geometry.grid import MaskedGrid, make_grid
from src.kondratiev import GridFunction, KondratievParams, time_kondratiev_norm
from src.parabolic import ParabolicProblem, Scheme, rothe_solve, time_grid

logger = logging.getLogger(__name__)

Probe = Callable[[float, np.ndarray, np.ndarray], np.ndarray]


def s_norm(snapshots: Sequence[np.ndarray], grid: MaskedGrid, times: Sequence[float]) -> float:
    """‖u‖_S² = Σ_n Δt (‖u^n‖²_{H¹_h} + ‖(u^n - u^{n-1})/Δt‖²_{L2_h}), n ≥ 1."""
    total = 0.0
    for n in range(1, len(times)):
        dt = times[n] - times[n - 1]
        rate = (snapshots[n] - snapshots[n - 1]) / dt
        total += dt * (grid.h1_norm(snapshots[n]) ** 2 + grid.l2_norm(rate) ** 2)
    return math.sqrt(total)


def d_norm(arrays: Sequence[np.ndarray], grid: MaskedGrid, times: Sequence[float]) -> float:
    """‖g‖_D² = Σ_n Δt ‖g^n‖²_{L2_h}, n ≥ 1."""
    return math.sqrt(sum((times[n] - times[n - 1]) * grid.l2_norm(arrays[n]) ** 2 for n in range(1, len(times))))


def data_norm(
    arrays: Sequence[np.ndarray],
    grid: MaskedGrid,
    times: Sequence[float],
    gamma_m: int = 0,
    kondratiev: Optional[KondratievParams] = None,
) -> float:
    """
    η: D-norms of ∂_t^k f for k = 0..γ_m (backward differences in t), plus the
    L2-in-time Kondratiev norm of f when `kondratiev` is given.
    """
    times = np.asarray(times, dtype=float)
    total = 0.0
    current = [np.asarray(a, dtype=float) for a in arrays]
    current_times = times
    for k in range(gamma_m + 1):
        if len(current) < 2:
            logger.warning(f"Too few time levels for ∂_t^{k} f; η stops at k={k - 1}")
            break
        total += d_norm(current, grid, current_times) ** 2
        dt = np.diff(current_times)
        current = [(current[n + 1] - current[n]) / dt[n] for n in range(len(current) - 1)]
        current_times = current_times[1:]
    if kondratiev is not None:
        snapshots = [(float(t), GridFunction(grid, np.asarray(a, dtype=float))) for t, a in zip(times, arrays)]
        total += time_kondratiev_norm(snapshots, kondratiev) ** 2
    return math.sqrt(total)


def probe_family(problem: ParabolicProblem, count: int, seed: Optional[int] = None) -> List[Probe]:
    """
    Separable smooth probes a·t^k·sin(k1 π ξ)·sin(k2 π ζ) in box coordinates ξ, ζ,
    all vanishing at t = 0. The first probe is t·sin(πξ)·sin(πζ).
    """
    if count < 1:
        raise ParameterError("Need at least one probe")
    config = get_config()
    rng = np.random.default_rng(config.DEFAULT_SEED if seed is None else seed)
    xmin, ymin, xmax, ymax = problem.domain.bounds
    width, height = xmax - xmin, ymax - ymin

    def make(amplitude, power, k1, k2):
        def probe(t, X, Y):
            return (
                amplitude
                * t**power
                * np.sin(k1 * math.pi * (X - xmin) / width)
                * np.sin(k2 * math.pi * (Y - ymin) / height)
            )

        return probe

    probes = [make(1.0, 1, 1, 1)]
    for _ in range(count - 1):
        probes.append(
            make(float(rng.uniform(0.5, 2.0)), int(rng.integers(1, 3)), int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        )
    return probes


def apply_inverse(
    problem: ParabolicProblem,
    grid: MaskedGrid,
    dt: float,
    arrays: Sequence[np.ndarray],
    scheme: Scheme = Scheme.IMPLICIT_EULER,
):
    """L̃⁻¹ g: one linear solve from zero initial data with per-step forcing arrays."""
    return rothe_solve(replace(problem, initial=None), grid.h, dt, scheme=scheme, forcing_steps=arrays, grid=grid)


def estimate_inverse_norm(
    problem: ParabolicProblem,
    h: float,
    dt: float,
    probes: int = 8,
    seed: Optional[int] = None,
    probe_functions: Optional[Sequence[Probe]] = None,
    scheme: Scheme = Scheme.IMPLICIT_EULER,
) -> float:
    """max over probes g of ‖L̃⁻¹g‖_S / ‖g‖_D."""
    grid = make_grid(problem.domain, h)
    times = time_grid(problem.final_time, dt)
    family = list(probe_functions) if probe_functions is not None else probe_family(problem, probes, seed)
    best = 0.0
    for i, probe in enumerate(family):
        arrays = [np.where(grid.interior, probe(t, grid.X, grid.Y), 0.0) for t in times]
        denominator = d_norm(arrays, grid, times)
        if denominator == 0.0:
            logger.debug(f"Probe {i} vanishes on the grid; skipped")
            continue
        solution = apply_inverse(problem, grid, dt, arrays, scheme)
        ratio = s_norm(solution.snapshots, grid, solution.times) / denominator
        logger.debug(f"Probe {i}: ratio {ratio:.6f}")
        best = max(best, ratio)
    if best == 0.0:
        raise ParameterError("Every probe vanished on the grid")
    logger.info(f"‖L̃⁻¹‖ estimate for '{problem.name}' at h={h}: {best:.6f}")
    return best
