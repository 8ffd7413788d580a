"""Masked uniform grids resolving axis-aligned polygons exactly."""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import shapely

from src.errors import GridShapeError

from .types import PolygonalDomain

logger = logging.getLogger(__name__)

GRID_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MaskedGrid:
    """
    Uniform nodes over the domain's bounding box with membership masks.

    Nodal arrays are indexed [ix, iy] (numpy 'ij' ordering). `interior` marks nodes
    strictly inside the domain, `closed` adds the boundary nodes, `cells` marks grid
    cells whose centre lies inside the domain.
    """

    domain: PolygonalDomain
    h: float
    x: np.ndarray
    y: np.ndarray
    interior: np.ndarray
    closed: np.ndarray
    cells: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return self.interior.shape

    @property
    def origin(self) -> Tuple[float, float]:
        return float(self.x[0]), float(self.y[0])

    @property
    def X(self) -> np.ndarray:
        return np.meshgrid(self.x, self.y, indexing="ij")[0]

    @property
    def Y(self) -> np.ndarray:
        return np.meshgrid(self.x, self.y, indexing="ij")[1]

    @property
    def n_unknowns(self) -> int:
        return int(self.interior.sum())

    def zeros(self) -> np.ndarray:
        return np.zeros(self.shape)

    def gather(self, values: np.ndarray) -> np.ndarray:
        """Interior unknowns of a full nodal array, in C order."""
        return np.asarray(values)[self.interior]

    def scatter(self, vector: np.ndarray) -> np.ndarray:
        """Full nodal array with the interior unknowns set and zeros elsewhere."""
        full = self.zeros()
        full[self.interior] = vector
        return full

    # --- Discrete norms (zero Dirichlet data assumed outside the interior) ---

    def l2_inner(self, u: np.ndarray, v: np.ndarray) -> float:
        return float(self.h**2 * np.sum(u[self.interior] * v[self.interior]))

    def l2_norm(self, u: np.ndarray) -> float:
        return math.sqrt(max(self.l2_inner(u, u), 0.0))

    def h1_seminorm(self, u: np.ndarray) -> float:
        # h² · Σ (Δu / h)² over all grid edges of the zero-extended array
        u = np.where(self.closed, u, 0.0)
        return math.sqrt(float(np.sum(np.diff(u, axis=0) ** 2) + np.sum(np.diff(u, axis=1) ** 2)))

    def h1_norm(self, u: np.ndarray) -> float:
        return math.sqrt(self.l2_norm(u) ** 2 + self.h1_seminorm(u) ** 2)


def make_grid(domain: PolygonalDomain, h: float) -> MaskedGrid:
    """
    Build the masked grid of spacing h. Every vertex must be a grid node, otherwise
    the boundary is not resolved and GridShapeError is raised.
    """
    if h <= 0:
        raise GridShapeError(f"Grid spacing must be positive, got {h}")
    xmin, ymin, xmax, ymax = domain.bounds

    for vx, vy in domain.vertices:
        for offset in ((vx - xmin) / h, (vy - ymin) / h):
            if abs(offset - round(offset)) > GRID_TOL:
                raise GridShapeError(
                    f"Spacing h={h} does not resolve vertex ({vx}, {vy}) of '{domain.name}'"
                )

    nx = int(round((xmax - xmin) / h))
    ny = int(round((ymax - ymin) / h))
    x = xmin + h * np.arange(nx + 1)
    y = ymin + h * np.arange(ny + 1)
    X, Y = np.meshgrid(x, y, indexing="ij")

    shape = domain.shape
    interior = shapely.contains_xy(shape, X, Y)
    closed = shapely.intersects_xy(shape, X, Y)
    XC, YC = np.meshgrid(x[:-1] + h / 2, y[:-1] + h / 2, indexing="ij")
    cells = shapely.contains_xy(shape, XC, YC)

    logger.debug(
        f"Grid for '{domain.name}': h={h}, nodes={X.shape}, unknowns={int(interior.sum())}"
    )
    return MaskedGrid(
        domain=domain, h=float(h), x=x, y=y, interior=interior, closed=closed, cells=cells
    )
