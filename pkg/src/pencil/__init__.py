"""Wedge operator pencils, δ± strips and weight admissibility."""

from .spectrum import (
    dirichlet_laplace_wedge_eigenvalues,
    pencil_determinant,
    pencil_spectrum_numeric,
    strip_radii,
    transformed_opening_angle,
)
from .strips import (
    delta_strips,
    delta_strips_over_time,
    vertex_strip_free,
    weight_admissible,
    write_admissibility_table,
    write_strip_report,
)
from .types import (
    AdmissibilityReport,
    AdmissibleInterval,
    StripReport,
    WedgePencil,
    WeightBudget,
    WeightVerdict,
)

__all__ = [
    "AdmissibilityReport",
    "AdmissibleInterval",
    "StripReport",
    "WedgePencil",
    "WeightBudget",
    "WeightVerdict",
    "delta_strips",
    "delta_strips_over_time",
    "dirichlet_laplace_wedge_eigenvalues",
    "pencil_determinant",
    "pencil_spectrum_numeric",
    "strip_radii",
    "transformed_opening_angle",
    "vertex_strip_free",
    "weight_admissible",
    "write_admissibility_table",
    "write_strip_report",
]
