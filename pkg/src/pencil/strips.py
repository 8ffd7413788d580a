"""Eigenvalue-free strips and Kondratiev weight admissibility at singular vertices."""

import logging
import math
from typing import Callable, List, Sequence, Tuple, Union

from src.errors import ParameterError
from src.utils.format_utils import PathLike, write_csv, write_key_values

from .spectrum import pencil_spectrum_numeric
from .types import (
    AdmissibilityReport,
    AdmissibleInterval,
    StripReport,
    WedgePencil,
    WeightBudget,
    WeightVerdict,
)

logger = logging.getLogger(__name__)


def delta_strips(source: Union[WedgePencil, StripReport]) -> Tuple[float, float]:
    """
    (δ-, δ+) around Re λ = m - 1. The Dirichlet Laplacian uses the closed form
    π/θ; anything else goes through the shooting spectrum.
    """
    if isinstance(source, StripReport):
        return source.delta_minus, source.delta_plus
    if source.is_laplacian:
        value = math.pi / source.theta
        return value, value
    report = pencil_spectrum_numeric(source)
    return report.delta_minus, report.delta_plus


def delta_strips_over_time(
    pencil_at: Callable[[float], WedgePencil], times: Sequence[float]
) -> Tuple[float, float]:
    """Infimum of δ±(t) over a time grid, coefficients frozen at each t."""
    if len(times) == 0:
        raise ParameterError("Need at least one time to freeze the coefficients at")
    strips = [delta_strips(pencil_at(float(t))) for t in times]
    delta_minus = min(s[0] for s in strips)
    delta_plus = min(s[1] for s in strips)
    logger.debug(f"δ± over {len(times)} times: ({delta_minus:.8f}, {delta_plus:.8f})")
    return delta_minus, delta_plus


def weight_admissible(budget: WeightBudget) -> AdmissibilityReport:
    """
    Check -δ- < b + m < δ+ at every singular vertex for every b in the budget and
    for b' = -m, and return the a-interval on which all checks pass, intersected
    with [-m, m].
    """
    if len(budget.delta_minus) == 0:
        raise ParameterError("Weight budget has no singular vertices")

    m = budget.m
    verdicts: List[WeightVerdict] = []
    lower, upper = -float(m), float(m)
    lower_closed = upper_closed = True

    for vertex, (d_minus, d_plus) in enumerate(zip(budget.delta_minus, budget.delta_plus)):
        for i, (offset, b) in enumerate(zip(budget.offsets, budget.b_values)):
            passed = bool(-d_minus < b + m < d_plus)
            verdicts.append(WeightVerdict(vertex, i, b, -d_minus - m, d_plus - m, passed))

            # open bounds on a from this b
            a_lo = -d_minus - m - offset
            a_hi = d_plus - m - offset
            if a_lo >= lower:
                lower, lower_closed = a_lo, False
            if a_hi <= upper:
                upper, upper_closed = a_hi, False

        b_prime = budget.b_prime
        verdicts.append(
            WeightVerdict(vertex, None, b_prime, -d_minus - m, d_plus - m, bool(-d_minus < b_prime + m < d_plus))
        )

    interval = AdmissibleInterval(lower, upper, lower_closed, upper_closed)
    report = AdmissibilityReport(verdicts=verdicts, interval=interval)
    if interval.is_empty:
        logger.warning(f"No admissible base weight for γ={budget.gamma}, m={m}")
    else:
        logger.info(f"Admissible a ∈ {interval}; a={budget.a} passes: {report.all_passed}")
    return report


def vertex_strip_free(
    eigenvalues: Sequence[complex], b: float, b_prime: float, m: int
) -> bool:
    """
    True when no eigenvalue has real part in the closed strip between the lines
    Re λ = b + 2m - 3/2 and Re λ = b' + 2m - 3/2.
    """
    lo, hi = sorted((b + 2 * m - 1.5, b_prime + 2 * m - 1.5))
    blocking = [z for z in eigenvalues if lo <= complex(z).real <= hi]
    if blocking:
        logger.debug(f"Vertex strip [{lo}, {hi}] contains {blocking}")
    return not blocking


def write_strip_report(report: StripReport, path: PathLike):
    eigenvalues = " ".join(f"{complex(z).real:.12g}{complex(z).imag:+.12g}j" for z in report.eigenvalues)
    return write_key_values(
        path,
        [
            ("theta", report.theta),
            ("delta_minus", report.delta_minus),
            ("delta_plus", report.delta_plus),
            ("eigenvalues", eigenvalues),
            ("method", report.method),
        ],
    )


def write_admissibility_table(report: AdmissibilityReport, path: PathLike):
    rows = [
        (v.vertex, "b'" if v.i is None else v.i, v.b, v.lower, v.upper, v.passed)
        for v in report.verdicts
    ]
    return write_csv(path, ["vertex", "i", "b", "lower", "upper", "pass"], rows)
