"""Construction, validation and weight functions for polygonal domains."""

import logging
import math
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
import shapely
from dotenv import dotenv_values
from shapely.geometry import LineString, LinearRing, Point as ShapelyPoint

from src.errors import (
    ConfigError,
    DomainMembershipError,
    ParameterError,
    VertexIndexError,
)
from src.utils.format_utils import format_float

from .types import Point, PolygonalDomain, PrismDomain

logger = logging.getLogger(__name__)

MEMBERSHIP_TOL = 1e-12
AXIS_TOL = 1e-12


# ----------------------------------------------------------------------------
# Helper Functions
# ----------------------------------------------------------------------------


def _interior_angles(vertices: Sequence[Point]) -> Tuple[float, ...]:
    """Interior angle at every vertex of a positively oriented polygon."""
    v = np.asarray(vertices, dtype=float)
    angles = []
    n = len(v)
    for i in range(n):
        e1 = v[i] - v[i - 1]
        e2 = v[(i + 1) % n] - v[i]
        cross = e1[0] * e2[1] - e1[1] * e2[0]
        dot = float(np.dot(e1, e2))
        if cross == 0.0 and dot < 0.0:
            # the boundary turns back on itself: crack tip
            angles.append(2.0 * math.pi)
            continue
        turn = math.atan2(cross, dot)
        angles.append(math.pi - turn)
    return tuple(angles)


def _check_simple(vertices: Sequence[Point], angles: Sequence[float]) -> None:
    """
    Reject self-intersecting boundaries. Edges may only touch at vertices that
    appear twice in the vertex list (both sides of a slit).
    """
    n = len(vertices)
    edges = [LineString([vertices[i], vertices[(i + 1) % n]]) for i in range(n)]
    seen = {}
    for v in vertices:
        seen[tuple(v)] = seen.get(tuple(v), 0) + 1
    repeated = {v for v, count in seen.items() if count > 1}

    for i, j in combinations(range(n), 2):
        adjacent = j == i + 1 or (i == 0 and j == n - 1)
        if adjacent:
            shared = i + 1 if j == i + 1 else 0
            if angles[shared] == 2.0 * math.pi:
                continue
            overlap = edges[i].intersection(edges[j])
            if overlap.geom_type != "Point":
                raise ParameterError(f"Edges {i} and {j} overlap")
            continue
        crossing = edges[i].intersection(edges[j])
        if crossing.is_empty:
            continue
        if crossing.geom_type == "Point" and (crossing.x, crossing.y) in repeated:
            continue
        raise ParameterError(f"Polygon is not simple: edges {i} and {j} intersect")


def polygon_domain(
    vertices: Iterable[Sequence[float]],
    singular_vertices: Iterable[int] = (),
    name: str = "polygon",
) -> PolygonalDomain:
    """
    Validate an axis-aligned polygon and compute its opening angles.

    Raises ParameterError for non-simple, clockwise or non-axis-aligned input.
    """
    verts = tuple((float(x), float(y)) for x, y in vertices)
    if len(verts) < 3:
        raise ParameterError("A polygon needs at least three vertices")
    n = len(verts)
    for i in range(n):
        (x0, y0), (x1, y1) = verts[i], verts[(i + 1) % n]
        if abs(x1 - x0) > AXIS_TOL and abs(y1 - y0) > AXIS_TOL:
            raise ParameterError(f"Edge {i} is not axis-aligned")
        if abs(x1 - x0) <= AXIS_TOL and abs(y1 - y0) <= AXIS_TOL:
            raise ParameterError(f"Edge {i} has zero length")

    if not shapely.is_ccw(LinearRing(verts)):
        raise ParameterError("Polygon must be positively oriented (counter-clockwise)")

    singular = tuple(sorted(set(int(i) for i in singular_vertices)))
    for i in singular:
        if not 0 <= i < n:
            raise VertexIndexError(f"Singular vertex index {i} out of range 0..{n - 1}")

    angles = _interior_angles(verts)
    _check_simple(verts, angles)
    if not all(0.0 < a <= 2.0 * math.pi for a in angles):
        raise ParameterError("Opening angles must lie in (0, 2π]")

    return PolygonalDomain(
        vertices=verts,
        singular_vertices=singular,
        opening_angles=angles,
        delta=0,
        name=name,
    )


# ----------------------------------------------------------------------------
# Canonical domains
# ----------------------------------------------------------------------------


def make_l_shape() -> PolygonalDomain:
    """(−1,1)² without [0,1)×(−1,0]; the re-entrant origin is singular."""
    vertices = [(0, 0), (1, 0), (1, 1), (-1, 1), (-1, -1), (0, -1)]
    return polygon_domain(vertices, singular_vertices=[0], name="l-shape")


def make_unit_square(singular_origin: bool = False) -> PolygonalDomain:
    vertices = [(0, 0), (1, 0), (1, 1), (0, 1)]
    singular = [0] if singular_origin else []
    return polygon_domain(vertices, singular_vertices=singular, name="unit-square")


def make_slit_domain() -> PolygonalDomain:
    """(−1,1)² cut along [0,1)×{0}; the crack tip at the origin has θ = 2π."""
    vertices = [(0, 0), (1, 0), (1, 1), (-1, 1), (-1, -1), (1, -1), (1, 0)]
    return polygon_domain(vertices, singular_vertices=[0], name="slit")


NAMED_DOMAINS = {
    "l-shape": make_l_shape,
    "unit-square": make_unit_square,
    "slit": make_slit_domain,
}


# ----------------------------------------------------------------------------
# Weights and angles
# ----------------------------------------------------------------------------


def contains_point(domain: PolygonalDomain, x: Sequence[float]) -> bool:
    """Closed-domain membership with tolerance 1e-12."""
    return domain.shape.distance(ShapelyPoint(float(x[0]), float(x[1]))) <= MEMBERSHIP_TOL


def distance_weight(
    domain: Union[PolygonalDomain, PrismDomain], x: Sequence[float]
) -> float:
    """
    ρ(x) = min(dist(x, S), 1) for a point of the closed domain.

    For prisms the singular set is the vertical edges over the base's singular
    vertices, so only the horizontal distance counts.
    """
    if isinstance(domain, PrismDomain):
        if not (-MEMBERSHIP_TOL <= x[2] <= domain.height + MEMBERSHIP_TOL):
            raise DomainMembershipError(f"Point {tuple(x)} lies outside the prism")
        base = domain.base
    else:
        base = domain
    if not contains_point(base, x):
        raise DomainMembershipError(f"Point {tuple(x)} lies outside domain '{base.name}'")
    return float(distance_weight_array(base, np.asarray(x[0]), np.asarray(x[1])))


def distance_weight_array(
    domain: PolygonalDomain, X: np.ndarray, Y: np.ndarray
) -> np.ndarray:
    """Vectorised ρ without membership checks (callers pass domain points)."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    points = domain.singular_points
    if len(points) == 0:
        return np.ones(np.broadcast(X, Y).shape)
    dist = np.full(np.broadcast(X, Y).shape, np.inf)
    for px, py in points:
        dist = np.minimum(dist, np.hypot(X - px, Y - py))
    return np.minimum(dist, 1.0)


def interior_angle(domain: PolygonalDomain, index: int) -> float:
    """Opening angle θ at a vertex, in (0, 2π]."""
    if not 0 <= index < len(domain.vertices):
        raise VertexIndexError(
            f"Vertex index {index} out of range 0..{len(domain.vertices) - 1}"
        )
    return domain.opening_angles[index]


def exterior_turning_sum(domain: PolygonalDomain) -> float:
    """Σ (π − θ_i); equals 2π for every simple positively oriented polygon."""
    return float(sum(math.pi - a for a in domain.opening_angles))


def singular_angles(domain: PolygonalDomain) -> Dict[int, float]:
    return {i: domain.opening_angles[i] for i in domain.singular_vertices}


# ----------------------------------------------------------------------------
# Config round-trip
# ----------------------------------------------------------------------------


def domain_to_config(domain: PolygonalDomain) -> Dict[str, str]:
    """Flat key-value description with 17-digit vertex coordinates."""
    vertices = "; ".join(f"{format_float(x)} {format_float(y)}" for x, y in domain.vertices)
    return {
        "domain_name": domain.name,
        "domain_vertices": vertices,
        "domain_singular_vertices": ",".join(str(i) for i in domain.singular_vertices),
    }


def domain_from_config(values: Dict[str, Optional[str]]) -> PolygonalDomain:
    """
    Build a domain from config values: either `domain=<named domain>` or explicit
    `domain_vertices` plus `domain_singular_vertices`.
    """
    if values.get("domain_vertices"):
        try:
            vertices = [
                tuple(float(c) for c in pair.split())
                for pair in values["domain_vertices"].split(";")
                if pair.strip()
            ]
            singular_text = (values.get("domain_singular_vertices") or "").strip()
            singular = [int(s) for s in singular_text.split(",") if s.strip()]
        except ValueError as e:
            raise ConfigError(f"Malformed domain description: {e}") from e
        return polygon_domain(
            vertices, singular, name=values.get("domain_name") or "polygon"
        )

    name = (values.get("domain") or "").strip()
    if name not in NAMED_DOMAINS:
        raise ConfigError(
            f"Unknown domain '{name}'. Choose one of {sorted(NAMED_DOMAINS)} "
            "or give domain_vertices"
        )
    return NAMED_DOMAINS[name]()


def save_domain(domain: PolygonalDomain, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        for key, value in domain_to_config(domain).items():
            f.write(f'{key}="{value}"\n')
    logger.info(f"Saved domain '{domain.name}' to {path}")
    return path


def load_domain(path: Union[str, Path]) -> PolygonalDomain:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Domain file {path} does not exist")
    return domain_from_config(dotenv_values(path))
