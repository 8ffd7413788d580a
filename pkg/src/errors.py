"""Exception hierarchy shared by every badapt module."""

from typing import Any, List, Optional, Tuple


class BadaptError(Exception):
    """Base class for all badapt errors."""


class ConfigError(BadaptError, ValueError):
    """Malformed or missing configuration (CLI exit code 2)."""


class DependencyError(BadaptError):
    """An artifact another step depends on is missing."""


class ParameterError(BadaptError, ValueError):
    """Parameters violate the hypothesis of the requested operation."""


class DomainMembershipError(BadaptError, ValueError):
    """A point lies outside the closed domain."""


class VertexIndexError(BadaptError, IndexError):
    pass


class GridShapeError(BadaptError, ValueError):
    """Sample array is not on a dyadic grid of the expected shape."""


class LevelError(BadaptError, ValueError):
    """Requested wavelet level is not available at the given resolution."""


class OrderingError(BadaptError, ValueError):
    """Time stamps are unsorted or duplicated."""


class InsufficientDataError(BadaptError, ValueError):
    """Too few usable points for a fit."""


# --- Numerical diagnostics (CLI exit code 3) ---


class NumericalDiagnosticError(BadaptError):
    """A computation ran but its result failed a numerical check."""


class EllipticityError(NumericalDiagnosticError):
    pass


class SolverDiagnosticError(NumericalDiagnosticError):
    """Krylov iteration stagnated or broke down."""

    def __init__(self, message: str, info: int = 0, step: Optional[int] = None):
        super().__init__(message)
        self.info = info
        self.step = step


class UnresolvedRootError(NumericalDiagnosticError):
    """Root refinement did not converge inside a bracket."""

    def __init__(self, message: str, brackets: List[Tuple[Any, Any]]):
        super().__init__(message)
        self.brackets = brackets


class SmallnessError(NumericalDiagnosticError):
    """Smallness conditions for the fixed-point iteration fail."""


class FixedPointDivergenceError(NumericalDiagnosticError):
    """Step norms kept growing; the history is attached."""

    def __init__(self, message: str, history: Any):
        super().__init__(message)
        self.history = history
