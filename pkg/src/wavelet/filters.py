"""Filter construction and orthonormality checks."""

import logging
from typing import Union

import numpy as np

from src.errors import ParameterError

from .types import SQRT2, FilterFamily, WaveletSystem

logger = logging.getLogger(__name__)

FILTER_TOL = 1e-12


def check_filter(h: np.ndarray, tol: float = FILTER_TOL) -> None:
    """Raise ParameterError unless Σh = √2 and even shifts are orthonormal."""
    h = np.asarray(h, dtype=float)
    if abs(h.sum() - SQRT2) > tol:
        raise ParameterError(f"Filter sum {h.sum()!r} differs from √2")
    for shift in range(0, len(h), 2):
        inner = float(np.dot(h[: len(h) - shift], h[shift:]))
        expected = 1.0 if shift == 0 else 0.0
        if abs(inner - expected) > tol:
            raise ParameterError(f"Filter is not orthonormal at even shift {shift}: {inner!r}")


def make_system(family: Union[FilterFamily, int, str] = FilterFamily.DB3, d: int = 2) -> WaveletSystem:
    """
    Build a validated wavelet system from a family, its order r, or its label.
    """
    if isinstance(family, int):
        family = FilterFamily.from_order(family)
    elif isinstance(family, str):
        family = FilterFamily.from_label(family)
    if d not in (1, 2):
        raise ParameterError(f"Transforms support d in {{1, 2}}, got d={d}")
    system = WaveletSystem(family=family, d=d)
    check_filter(system.lowpass)
    logger.debug(f"Wavelet system {family.label}, r={system.order}, d={d}")
    return system
