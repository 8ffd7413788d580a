"""Fixed-point configuration, smallness verdicts and iteration histories."""

import math
from dataclasses import dataclass, field
from typing import List, Optional

from src.errors import ParameterError


@dataclass(frozen=True)
class FixedPointConfig:
    """
    Parameters of u ↦ L̃⁻¹(f - ε u^M). `eta` is the data norm of f and `opnorm`
    the surrogate of ‖L̃⁻¹‖; `c` is the non-computable constant of the Lipschitz
    estimate for u ↦ u^M, a user input.
    """

    epsilon: float
    power: int
    r0: float
    eta: float
    opnorm: float
    c: float = 1.0
    tol: float = 1e-8
    maxiter: int = 50
    override: bool = False

    def __post_init__(self):
        if self.epsilon < 0:
            raise ParameterError(f"ε must be nonnegative, got {self.epsilon}")
        if int(self.power) != self.power or self.power < 2:
            raise ParameterError(f"Power M must be an integer ≥ 2, got {self.power}")
        if not self.r0 > 1:
            raise ParameterError(f"Ball factor r0 must exceed 1, got {self.r0}")
        if self.eta < 0 or self.opnorm <= 0 or self.c <= 0:
            raise ParameterError("η must be nonnegative, ‖L̃⁻¹‖ and c positive")
        if self.tol <= 0 or self.maxiter < 1:
            raise ParameterError("Need tol > 0 and maxiter ≥ 1")

    @property
    def radius(self) -> float:
        """R = (r0 - 1)·η·‖L̃⁻¹‖."""
        return (self.r0 - 1) * self.eta * self.opnorm


@dataclass
class SmallnessVerdict:
    """
    Outcome of the smallness conditions. `branch` is "cond-02" when r0·‖L̃⁻¹‖·η ≤ 1
    and "cond-2" otherwise; `implied` names the contraction condition the branch
    implies. `c_max` is the largest c for which the applied branch still passes.
    """

    branch: str
    branch_value: float
    lhs: float
    rhs: float
    passed: bool
    implied: str
    implied_lhs: float
    implied_rhs: float
    implied_passed: bool
    c_max: float
    exponent_discrepancy: bool = True
    alternative_passed: Optional[bool] = None
    note: str = ""


@dataclass
class IterationHistory:
    """step_norms[n] = ‖u_{n+1} - u_n‖_S; residuals and ball distances per iterate."""

    iterates: List = field(default_factory=list)
    step_norms: List[float] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)
    ball_distances: List[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.iterates)

    def rows(self):
        for n in range(len(self.iterates)):
            step = self.step_norms[n - 1] if n > 0 else math.nan
            yield n, step, self.residuals[n], self.ball_distances[n]


@dataclass
class ContractionReport:
    q: float
    contracting: bool
    radius: float
    max_ball_distance: float
    inside_ball: bool
