"""Linear parabolic problems, time-stepping schemes and discrete solutions."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
import scipy.sparse as sp

from src.errors import ParameterError
from src.geometry.grid import MaskedGrid
from src.geometry.types import PolygonalDomain

# f(t, X, Y) and coefficient callbacks share this signature
SpaceTimeFunction = Callable[[float, np.ndarray, np.ndarray], np.ndarray]
Coefficient = Union[float, SpaceTimeFunction]


def _evaluate(value: Coefficient, t: float, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    if callable(value):
        return np.broadcast_to(np.asarray(value(t, X, Y), dtype=float), np.shape(X))
    return np.full(np.shape(X), float(value))


@dataclass(frozen=True)
class OperatorCoefficients:
    """
    -div(A∇u) + b·∇u + c u with A = [[a11, a12], [a12, a22]]. The first-order part
    enters the bilinear form skew-symmetrically, so a_{αβ} = (-1)^{|α|+|β|} a_{βα}.
    Each entry is a constant or a callback (t, X, Y).
    """

    a11: Coefficient = 1.0
    a12: Coefficient = 0.0
    a22: Coefficient = 1.0
    b1: Coefficient = 0.0
    b2: Coefficient = 0.0
    c: Coefficient = 0.0
    name: str = "custom"

    def evaluate(self, entry: str, t: float, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return _evaluate(getattr(self, entry), t, X, Y)

    def smallest_principal_eigenvalue(self, t: float, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        a11 = self.evaluate("a11", t, X, Y)
        a12 = self.evaluate("a12", t, X, Y)
        a22 = self.evaluate("a22", t, X, Y)
        return 0.5 * (a11 + a22) - np.sqrt(0.25 * (a11 - a22) ** 2 + a12**2)

    @property
    def has_first_order(self) -> bool:
        return any(callable(v) or v != 0.0 for v in (self.b1, self.b2))

    @property
    def has_mixed(self) -> bool:
        return callable(self.a12) or self.a12 != 0.0


@dataclass(frozen=True, eq=False)
class ParabolicProblem:
    """
    u_t + L(t)u = f on D × (0, T], u = 0 on ∂D, u(0) = 0 unless a warm start
    `initial(X, Y)` is given. `exact` is the manufactured solution, if any.
    """

    domain: PolygonalDomain
    final_time: float
    coefficients: OperatorCoefficients = field(default_factory=OperatorCoefficients)
    forcing: Optional[SpaceTimeFunction] = None
    exact: Optional[SpaceTimeFunction] = None
    initial: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None
    nonlinearity_power: int = 3
    m: int = 1
    name: str = "problem"

    def __post_init__(self):
        if not self.final_time > 0:
            raise ParameterError(f"Final time must be positive, got {self.final_time}")
        if self.m != 1:
            raise ParameterError("The solver handles second-order operators (m = 1) only")

    def forcing_values(self, t: float, grid: MaskedGrid) -> np.ndarray:
        if self.forcing is None:
            return grid.zeros()
        return np.where(grid.interior, _evaluate(self.forcing, t, grid.X, grid.Y), 0.0)


# --- Time-stepping schemes ---


class Scheme(Enum):
    """θ-method steps: θ = 1 is implicit Euler, θ = 1/2 is Crank–Nicolson."""

    IMPLICIT_EULER = ("implicit-euler", 1.0)
    CRANK_NICOLSON = ("crank-nicolson", 0.5)

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def theta(self) -> float:
        return self.value[1]

    @classmethod
    def from_label(cls, label: str) -> "Scheme":
        aliases = {"ie": cls.IMPLICIT_EULER, "cn": cls.CRANK_NICOLSON}
        key = label.strip().lower()
        if key in aliases:
            return aliases[key]
        for member in cls:
            if member.label == key:
                return member
        raise ParameterError(f"Unknown time-stepping scheme '{label}'")

    def __call__(
        self,
        A_new: sp.spmatrix,
        A_old: sp.spmatrix,
        u_old: np.ndarray,
        f_old: np.ndarray,
        f_new: np.ndarray,
        dt: float,
    ) -> Tuple[sp.csr_matrix, np.ndarray]:
        """System (I + θΔt A^{n+1}) u^{n+1} = (I - (1-θ)Δt A^n) u^n + Δt(θ f^{n+1} + (1-θ) f^n)."""
        theta = self.theta
        identity = sp.identity(A_new.shape[0], format="csr")
        matrix = (identity + theta * dt * A_new).tocsr()
        rhs = u_old + dt * (theta * f_new + (1 - theta) * f_old)
        if theta < 1:
            rhs = rhs - (1 - theta) * dt * (A_old @ u_old)
        return matrix, rhs


# --- Results ---


@dataclass
class DiscreteSolution:
    """Snapshots u^n on the full nodal grid at times t_0 = 0 < ... < t_K = T."""

    grid: MaskedGrid
    times: np.ndarray
    snapshots: List[np.ndarray]
    scheme: Scheme
    iterations: List[int] = field(default_factory=list)

    @property
    def h(self) -> float:
        return self.grid.h

    @property
    def time_step(self) -> float:
        return float(self.times[1] - self.times[0]) if len(self.times) > 1 else 0.0

    @property
    def final(self) -> np.ndarray:
        return self.snapshots[-1]

    def grid_functions(self):
        from src.kondratiev.types import GridFunction

        return [GridFunction(self.grid, u) for u in self.snapshots]


@dataclass
class CoercivityEstimate:
    mu: float
    t_at_min: float
    samples: int


@dataclass
class ErrorTable:
    times: np.ndarray
    errors: np.ndarray

    @property
    def max_error(self) -> float:
        return float(np.max(self.errors)) if len(self.errors) else 0.0

    @property
    def l2_time_error(self) -> float:
        if len(self.times) < 2:
            return 0.0
        dt = np.diff(self.times)
        return math.sqrt(float(np.sum(dt * self.errors[1:] ** 2)))
