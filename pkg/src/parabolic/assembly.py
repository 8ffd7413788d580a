"""Sparse finite-difference assembly of -div(A∇u) + b·∇u + cu on a masked grid."""

import logging
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from src.geometry.grid import MaskedGrid

from .types import OperatorCoefficients

logger = logging.getLogger(__name__)


def _difference(n: int) -> sp.csr_matrix:
    """n × (n+1) forward difference."""
    return sp.diags([-np.ones(n), np.ones(n)], [0, 1], shape=(n, n + 1), format="csr")


def _average(n: int) -> sp.csr_matrix:
    return sp.diags([0.5 * np.ones(n), 0.5 * np.ones(n)], [0, 1], shape=(n, n + 1), format="csr")


def _centred(n: int) -> sp.csr_matrix:
    """(n+1) × (n+1) centred difference, rows at the ends are unused."""
    return sp.diags([-0.5 * np.ones(n), 0.5 * np.ones(n)], [-1, 1], shape=(n + 1, n + 1), format="csr")


class Assembler:
    """
    Operators on the interior unknowns of a grid. The principal part is assembled
    in flux form G^T W G: edge differences for a11 and a22 (the 5-point stencil) and
    cell-centred gradients for a12 (the 9-point addition). First-order terms use the
    skew-symmetric centred form ½(b·∇u + div(bu)).
    """

    def __init__(self, grid: MaskedGrid):
        self.grid = grid
        nx, ny = grid.shape[0] - 1, grid.shape[1] - 1
        h = grid.h
        Ix, Iy = sp.identity(nx + 1), sp.identity(ny + 1)

        # full nodal array flattened in C order over [ix, iy]
        interior_index = np.flatnonzero(grid.interior.ravel())
        P = sp.identity(grid.interior.size, format="csr")[:, interior_index]

        self._grad_x = (sp.kron(_difference(nx), Iy) / h).tocsr() @ P
        self._grad_y = (sp.kron(Ix, _difference(ny)) / h).tocsr() @ P
        self._cell_x = (sp.kron(_difference(nx), _average(ny)) / h).tocsr() @ P
        self._cell_y = (sp.kron(_average(nx), _difference(ny)) / h).tocsr() @ P
        self._centred_x = (P.T @ (sp.kron(_centred(nx), Iy) / h) @ P).tocsr()
        self._centred_y = (P.T @ (sp.kron(Ix, _centred(ny)) / h) @ P).tocsr()

        x, y = grid.x, grid.y
        self._edge_x = np.meshgrid(x[:-1] + h / 2, y, indexing="ij")
        self._edge_y = np.meshgrid(x, y[:-1] + h / 2, indexing="ij")
        self._cell = np.meshgrid(x[:-1] + h / 2, y[:-1] + h / 2, indexing="ij")
        self._nodes = (grid.X[grid.interior], grid.Y[grid.interior])
        logger.debug(f"Assembler on {grid.n_unknowns} unknowns, h={h}")

    @property
    def size(self) -> int:
        return self.grid.n_unknowns

    @cached_property
    def laplacian(self) -> sp.csr_matrix:
        """5-point -Δ_h on the interior unknowns."""
        return (self._grad_x.T @ self._grad_x + self._grad_y.T @ self._grad_y).tocsr()

    def principal(self, coefficients: OperatorCoefficients, t: float) -> sp.csr_matrix:
        w11 = coefficients.evaluate("a11", t, *self._edge_x).ravel()
        w22 = coefficients.evaluate("a22", t, *self._edge_y).ravel()
        matrix = self._grad_x.T @ sp.diags(w11) @ self._grad_x + self._grad_y.T @ sp.diags(w22) @ self._grad_y
        if coefficients.has_mixed:
            w12 = sp.diags(coefficients.evaluate("a12", t, *self._cell).ravel())
            matrix = matrix + self._cell_x.T @ w12 @ self._cell_y + self._cell_y.T @ w12 @ self._cell_x
        return matrix.tocsr()

    def matrix(self, coefficients: OperatorCoefficients, t: float) -> sp.csr_matrix:
        """Discrete L(t) acting on interior unknowns (no mass matrix)."""
        matrix = self.principal(coefficients, t)
        if coefficients.has_first_order:
            b1 = sp.diags(coefficients.evaluate("b1", t, *self._nodes))
            b2 = sp.diags(coefficients.evaluate("b2", t, *self._nodes))
            matrix = matrix + 0.5 * (
                b1 @ self._centred_x + self._centred_x @ b1 + b2 @ self._centred_y + self._centred_y @ b2
            )
        c = coefficients.evaluate("c", t, *self._nodes)
        if np.any(c != 0.0):
            matrix = matrix + sp.diags(c)
        return matrix.tocsr()

    def h1_gram(self) -> sp.csr_matrix:
        """u^T G u = ‖u‖²_{H¹_h} / h² for interior vectors."""
        return (sp.identity(self.size, format="csr") + self.laplacian).tocsr()
