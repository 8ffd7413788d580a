"""Kondratiev norm parameters, grid functions and analytic callbacks."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from src.errors import ParameterError
from src.geometry.grid import MaskedGrid

MultiIndex = Tuple[int, int]


class AnalyticFunction(ABC):
    """A function of (x, y) with closed-form partial derivatives."""

    @abstractmethod
    def derivative(self, alpha: MultiIndex, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """D^α at the given points."""

    def __call__(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return self.derivative((0, 0), X, Y)


@dataclass(frozen=True)
class KondratievParams:
    """K^m_{p,a}: derivative order m, integrability p, weight exponent a."""

    m: int
    p: float
    a: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0:
            raise ParameterError(f"m must be a nonnegative integer, got {self.m}")
        if not 1 < self.p < np.inf:
            raise ParameterError(f"p must lie in (1, ∞), got {self.p}")

    def weight_exponent(self, order: int) -> float:
        """ρ is raised to p(|α| - a) for derivatives of order |α|."""
        return self.p * (order - self.a)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Nodal values on a masked grid, optionally backed by analytic derivatives."""

    grid: MaskedGrid
    values: np.ndarray
    analytic: Optional[AnalyticFunction] = None

    def __post_init__(self):
        if self.values.shape != self.grid.shape:
            raise ParameterError(
                f"Values of shape {self.values.shape} do not match grid {self.grid.shape}"
            )
        if not np.all(np.isfinite(self.values[self.grid.closed])):
            raise ParameterError("Grid function values must be finite")

    def scaled(self, alpha: float) -> "GridFunction":
        from .functions import ScaledFunction

        analytic = ScaledFunction(alpha, self.analytic) if self.analytic is not None else None
        return GridFunction(self.grid, alpha * self.values, analytic)


class NormStatus(Enum):
    FINITE = "finite"
    DIVERGENT = "divergent"


@dataclass
class KondratievNormResult:
    m: int
    p: float
    a: float
    value: float
    status: NormStatus
    cells: int
    refinement_depth: int

    @property
    def is_finite(self) -> bool:
        return self.status is NormStatus.FINITE

    def display_value(self) -> str:
        return "DIVERGENT" if not self.is_finite else format(self.value, ".10g")
