"""Polygonal domains of polyhedral type, their singular sets and masked grids."""

from .domains import (
    NAMED_DOMAINS,
    contains_point,
    distance_weight,
    distance_weight_array,
    domain_from_config,
    domain_to_config,
    exterior_turning_sum,
    interior_angle,
    load_domain,
    make_l_shape,
    make_slit_domain,
    make_unit_square,
    polygon_domain,
    save_domain,
    singular_angles,
)
from .grid import MaskedGrid, make_grid
from .types import PolygonalDomain, PrismDomain, SingularSet

__all__ = [
    "NAMED_DOMAINS",
    "MaskedGrid",
    "PolygonalDomain",
    "PrismDomain",
    "SingularSet",
    "contains_point",
    "distance_weight",
    "distance_weight_array",
    "domain_from_config",
    "domain_to_config",
    "exterior_turning_sum",
    "interior_angle",
    "load_domain",
    "make_grid",
    "make_l_shape",
    "make_slit_domain",
    "make_unit_square",
    "polygon_domain",
    "save_domain",
    "singular_angles",
]
