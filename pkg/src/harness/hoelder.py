"""Hölder-in-time difference quotients over stored snapshots."""

import logging
import math
from itertools import combinations
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from src.errors import InsufficientDataError, OrderingError, ParameterError

from .types import HoelderResult

logger = logging.getLogger(__name__)


def _prepare(snapshots: Sequence[Tuple[float, object]], beta: float):
    if not 0 < beta <= 1:
        raise ParameterError(f"Hölder exponent must lie in (0, 1], got {beta}")
    if len(snapshots) < 2:
        raise InsufficientDataError(f"Need at least two snapshots, got {len(snapshots)}")
    ordered = sorted(snapshots, key=lambda item: item[0])
    times = [float(t) for t, _ in ordered]
    if any(b == a for a, b in zip(times, times[1:])):
        raise OrderingError("Snapshot times must be distinct")
    return ordered


def _sup_quotient(ordered, beta: float, distance: Callable[[object, object], float]) -> HoelderResult:
    best, pair, count = 0.0, (float(ordered[0][0]), float(ordered[1][0])), 0
    for (s, a), (t, b) in combinations(ordered, 2):
        quotient = distance(a, b) / abs(t - s) ** beta
        count += 1
        if quotient > best:
            best, pair = quotient, (float(s), float(t))
    return HoelderResult(beta=beta, quotient=float(best), pair=pair, pairs=count)


def hoelder_time_quotient(snapshots: Sequence[Tuple[float, float]], beta: float) -> HoelderResult:
    """
    max |‖u(t)‖ - ‖u(s)‖| / |t - s|^β over snapshot pairs; a lower bound for the
    quotient of the Banach-valued function since |‖a‖ - ‖b‖| ≤ ‖a - b‖.
    """
    ordered = _prepare(snapshots, beta)
    result = _sup_quotient(ordered, beta, lambda a, b: abs(float(b) - float(a)))
    logger.debug(f"Norm quotient β={beta}: {result.quotient:.6g} at {result.pair}")
    return result


def hoelder_vector_quotient(
    snapshots: Sequence[Tuple[float, np.ndarray]],
    beta: float,
    norm: Optional[Callable[[np.ndarray], float]] = None,
) -> HoelderResult:
    """max ‖v(t) - v(s)‖ / |t - s|^β; ℓ2 of the coefficient difference by default."""
    ordered = _prepare(snapshots, beta)
    norm = norm or (lambda v: float(np.linalg.norm(np.ravel(v))))
    result = _sup_quotient(ordered, beta, lambda a, b: norm(np.asarray(b) - np.asarray(a)))
    if not math.isfinite(result.quotient):
        logger.warning(f"Vector quotient β={beta} is not finite")
    logger.debug(f"Vector quotient β={beta}: {result.quotient:.6g} at {result.pair}")
    return result
