"""Parameter bundles and results for Besov norms and approximation rates."""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from src.errors import ParameterError


class SmoothnessScale(Enum):
    """Sobolev-like scale (p = q fixed) or the adaptivity scale B^s_{τ,τ}."""

    SOBOLEV = "sobolev"
    ADAPTIVITY = "adaptivity"


@dataclass(frozen=True)
class BesovParams:
    s: float
    p: float
    q: float
    d: int = 2

    def __post_init__(self):
        if not (0 < self.p < np.inf and 0 < self.q < np.inf):
            raise ParameterError(f"Need 0 < p, q < ∞, got p={self.p}, q={self.q}")

    @property
    def hypothesis_holds(self) -> bool:
        """s > max(0, d(1/p - 1))."""
        return self.s > max(0.0, self.d * (1.0 / self.p - 1.0))

    @property
    def level_exponent(self) -> float:
        return self.s + self.d * (0.5 - 1.0 / self.p)


@dataclass(frozen=True)
class AdaptivityScalePoint:
    """B^s_{τ,τ} with 1/τ = s/d + 1/p."""

    s: float
    p: float
    d: int = 2

    def __post_init__(self):
        if self.s <= 0 or not 0 < self.p < np.inf:
            raise ParameterError(f"Need s > 0 and 0 < p < ∞, got s={self.s}, p={self.p}")

    @property
    def tau(self) -> float:
        return 1.0 / (self.s / self.d + 1.0 / self.p)

    def as_besov(self) -> BesovParams:
        return BesovParams(s=self.s, p=self.tau, q=self.tau, d=self.d)


@dataclass(frozen=True, eq=False)
class NTermCurve:
    n: np.ndarray
    sigma: np.ndarray
    p: float


@dataclass(frozen=True, eq=False)
class NTermResult:
    """σ_N of one best N-term approximation and the retained coefficient rows."""

    n: int
    sigma: float
    retained: np.ndarray
    p: float


@dataclass
class RateFit:
    s_est: float
    slope: float
    intercept: float
    r_squared: float
    window: Tuple[float, float]
    points: int


@dataclass
class SmoothnessEstimate:
    scale: SmoothnessScale
    p: float
    s_est: float
    r_squared: float
    window: Tuple[int, int]
    beta: float
    level_sums: List[float] = field(default_factory=list)
    diagnostic: Optional[str] = None

    @property
    def window_label(self) -> str:
        return f"{self.window[0]}..{self.window[1]}"

    def items(self) -> List[Tuple[str, object]]:
        """Fields of the structured-text smoothness report."""
        lines = [
            ("scale", self.scale.value),
            ("p", self.p),
            ("s_est", self.s_est),
            ("r_squared", self.r_squared),
            ("window", self.window_label),
            ("beta", self.beta),
        ]
        if self.diagnostic:
            lines.append(("diagnostic", self.diagnostic))
        return lines
