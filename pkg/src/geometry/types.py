"""Data structures for polygonal domains of polyhedral type."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Tuple

import numpy as np
from shapely.geometry import Polygon

Point = Tuple[float, float]
Point3 = Tuple[float, float, float]

# --- Data Classes ---


@dataclass(frozen=True)
class SingularSet:
    """Singular vertices (2D) and, for prism stubs, singular edge segments (3D)."""

    points: Tuple[Point, ...]
    segments: Tuple[Tuple[Point3, Point3], ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.points and not self.segments


@dataclass(frozen=True)
class PolygonalDomain:
    """
    Axis-aligned simple polygon, positively oriented, with flagged singular vertices.

    Build instances with `polygon_domain()` (or one of the `make_*` factories), which
    validates the polygon and fills in the opening angles.
    """

    vertices: Tuple[Point, ...]
    singular_vertices: Tuple[int, ...]
    opening_angles: Tuple[float, ...]
    delta: int = 0
    name: str = "polygon"

    @property
    def dimension(self) -> int:
        return 2

    @property
    def singular_set(self) -> SingularSet:
        return SingularSet(points=tuple(self.vertices[i] for i in self.singular_vertices))

    @property
    def singular_points(self) -> np.ndarray:
        """Singular vertex coordinates as an array of shape (k, 2)."""
        pts = [self.vertices[i] for i in self.singular_vertices]
        return np.asarray(pts, dtype=float).reshape(-1, 2)

    @property
    def bounds(self) -> Tuple[float, float, float, float]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    @cached_property
    def shape(self) -> Polygon:
        return Polygon(self.vertices)

    @property
    def area(self) -> float:
        # Shoelace formula; valid for slit polygons shapely flags as invalid
        v = np.asarray(self.vertices, dtype=float)
        x, y = v[:, 0], v[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


@dataclass(frozen=True)
class PrismDomain:
    """Polygon × [0, height]; the singular set is the vertical edges (δ = 1)."""

    base: PolygonalDomain
    height: float = 1.0
    delta: int = field(default=1, init=False)

    @property
    def dimension(self) -> int:
        return 3

    @property
    def singular_set(self) -> SingularSet:
        segments = tuple(
            ((p[0], p[1], 0.0), (p[0], p[1], self.height))
            for p in self.base.singular_set.points
        )
        return SingularSet(points=(), segments=segments)
