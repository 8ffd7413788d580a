"""Wedge pencils, eigenvalue-free strips and Kondratiev weight budgets."""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from src.errors import EllipticityError, ParameterError


@dataclass(frozen=True, eq=False)
class WedgePencil:
    """
    Principal part frozen at a vertex of opening angle θ. The wedge is
    {|φ - bisector| < θ/2}; `coefficients` is the symmetric 2×2 matrix (a_ij).
    """

    theta: float
    coefficients: np.ndarray = field(default_factory=lambda: np.eye(2))
    m: int = 1
    bisector: float = 0.0
    ellipticity_floor: float = 1e-8

    def __post_init__(self):
        if not 0 < self.theta <= 2 * math.pi + 1e-12:
            raise ParameterError(f"Opening angle must lie in (0, 2π], got {self.theta}")
        A = np.asarray(self.coefficients, dtype=float)
        if A.shape != (2, 2) or not np.allclose(A, A.T):
            raise ParameterError("Coefficient matrix must be symmetric 2×2")
        object.__setattr__(self, "coefficients", A)
        smallest = float(np.linalg.eigvalsh(A).min())
        if smallest < self.ellipticity_floor:
            raise EllipticityError(
                f"Frozen coefficients are not elliptic: smallest eigenvalue {smallest:.3e}"
            )
        if self.m != 1:
            raise ParameterError("The numeric pencil path supports m = 1 only")

    @property
    def energy_line(self) -> float:
        return self.m - 1.0

    @property
    def is_laplacian(self) -> bool:
        return bool(np.allclose(self.coefficients, np.eye(2) * self.coefficients[0, 0]))


@dataclass
class StripReport:
    theta: float
    delta_minus: float
    delta_plus: float
    eigenvalues: List[complex]
    method: str


@dataclass(frozen=True)
class WeightBudget:
    """
    Weights b = a + 2m(γ_m - i), i = 0..γ_m, and b' = -m, checked against the
    δ± strips of every singular vertex.
    """

    m: int
    a: float
    gamma: float
    delta_minus: Sequence[float]
    delta_plus: Sequence[float]

    def __post_init__(self):
        if not -self.m <= self.a <= self.m:
            raise ParameterError(f"Base weight a={self.a} must lie in [-m, m]")
        if len(self.delta_minus) != len(self.delta_plus):
            raise ParameterError("δ- and δ+ need one entry per singular vertex")

    @property
    def gamma_m(self) -> int:
        value = math.floor((self.gamma - 1) / (2 * self.m))
        if value < 0:
            raise ParameterError(f"γ={self.gamma} gives negative γ_m")
        return value

    @property
    def offsets(self) -> List[float]:
        """2m(γ_m - i) for i = 0..γ_m."""
        return [2 * self.m * (self.gamma_m - i) for i in range(self.gamma_m + 1)]

    @property
    def b_values(self) -> List[float]:
        return [self.a + o for o in self.offsets]

    @property
    def b_prime(self) -> float:
        return -float(self.m)


@dataclass
class WeightVerdict:
    vertex: int
    i: Optional[int]
    b: float
    lower: float
    upper: float
    passed: bool


@dataclass
class AdmissibleInterval:
    lower: float
    upper: float
    lower_closed: bool
    upper_closed: bool

    @property
    def is_empty(self) -> bool:
        if self.lower < self.upper:
            return False
        return not (self.lower == self.upper and self.lower_closed and self.upper_closed)

    def contains(self, a: float) -> bool:
        above = a >= self.lower if self.lower_closed else a > self.lower
        below = a <= self.upper if self.upper_closed else a < self.upper
        return above and below

    def __str__(self) -> str:
        left = "[" if self.lower_closed else "("
        right = "]" if self.upper_closed else ")"
        return f"{left}{self.lower:.10g}, {self.upper:.10g}{right}"


@dataclass
class AdmissibilityReport:
    verdicts: List[WeightVerdict]
    interval: AdmissibleInterval

    @property
    def all_passed(self) -> bool:
        return all(v.passed for v in self.verdicts)
