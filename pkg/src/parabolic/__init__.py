"""Linear parabolic solver on masked grids with coercivity and compatibility diagnostics."""

from .assembly import Assembler
from .diagnostics import coercivity_margin, compatibility_residuals, mms_error, observed_order
from .registry import COEFFICIENTS, FORCINGS, make_coefficients, make_forcing, manufactured_pair
from .solver import a_priori_ratio, check_ellipticity, discrete_residual, rothe_solve, time_grid
from .types import (
    CoercivityEstimate,
    DiscreteSolution,
    ErrorTable,
    OperatorCoefficients,
    ParabolicProblem,
    Scheme,
)

__all__ = [
    "Assembler",
    "COEFFICIENTS",
    "CoercivityEstimate",
    "DiscreteSolution",
    "ErrorTable",
    "FORCINGS",
    "OperatorCoefficients",
    "ParabolicProblem",
    "Scheme",
    "a_priori_ratio",
    "check_ellipticity",
    "coercivity_margin",
    "compatibility_residuals",
    "discrete_residual",
    "make_coefficients",
    "make_forcing",
    "manufactured_pair",
    "mms_error",
    "observed_order",
    "rothe_solve",
    "time_grid",
]
