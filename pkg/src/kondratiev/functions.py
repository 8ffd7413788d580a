"""Analytic test functions: corner singularities, polynomial bumps, products."""

from math import comb
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from src.geometry.grid import MaskedGrid

from .types import AnalyticFunction, GridFunction, MultiIndex


def _falling(lam: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= lam - i
    return out


class ConstantFunction(AnalyticFunction):
    def __init__(self, value: float = 1.0):
        self.value = float(value)

    def derivative(self, alpha, X, Y):
        X = np.asarray(X, dtype=float)
        if alpha == (0, 0):
            return np.full(np.broadcast(X, Y).shape, self.value)
        return np.zeros(np.broadcast(X, Y).shape)


class CornerSingularFunction(AnalyticFunction):
    """
    r^λ sin(λφ) around `center`, with φ ∈ [0, 2π) measured counter-clockwise from
    the direction `angle_offset`. The function is Im(z^λ) for the rotated complex
    coordinate z, so D^α with α = (a, b) is Im(i^b e^{-i|α|·offset} F^{(|α|)}(z)).
    """

    def __init__(self, exponent: float, center: Sequence[float] = (0.0, 0.0), angle_offset: float = 0.0):
        self.exponent = float(exponent)
        self.center = (float(center[0]), float(center[1]))
        self.angle_offset = float(angle_offset)

    def _polar(self, X, Y) -> Tuple[np.ndarray, np.ndarray]:
        dx = np.asarray(X, dtype=float) - self.center[0]
        dy = np.asarray(Y, dtype=float) - self.center[1]
        r = np.hypot(dx, dy)
        phi = np.mod(np.arctan2(dy, dx) - self.angle_offset, 2 * np.pi)
        return r, phi

    def derivative(self, alpha: MultiIndex, X, Y):
        r, phi = self._polar(X, Y)
        lam = self.exponent
        order = alpha[0] + alpha[1]
        if order == 0:
            return r**lam * np.sin(lam * phi)
        mu = lam - order
        with np.errstate(divide="ignore", invalid="ignore"):
            power = r**mu * np.exp(1j * mu * phi)
        factor = _falling(lam, order) * (1j ** alpha[1]) * np.exp(-1j * order * self.angle_offset)
        return np.imag(factor * power)


class SeparablePolynomial(AnalyticFunction):
    """
    px(x)·py(y), optionally clipped to |x - cx| ≤ wx, |y - cy| ≤ wy (bumps).
    """

    def __init__(
        self,
        px: Polynomial,
        py: Polynomial,
        support: Optional[Tuple[Tuple[float, float], Tuple[float, float]]] = None,
    ):
        self.px = px
        self.py = py
        self.support = support

    def derivative(self, alpha, X, Y):
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        value = self.px.deriv(alpha[0])(X) * self.py.deriv(alpha[1])(Y)
        if self.support is not None:
            (cx, wx), (cy, wy) = self.support
            inside = (np.abs(X - cx) <= wx) & (np.abs(Y - cy) <= wy)
            value = np.where(inside, value, 0.0)
        return value


def box_cutoff(half_width: float = 1.0) -> SeparablePolynomial:
    """(1 - (x/L)²)²(1 - (y/L)²)²: equal to 1 at the origin, zero on the box boundary."""
    base = Polynomial([1.0, 0.0, -1.0]) ** 2
    window = [-half_width, half_width]
    px = Polynomial(base.coef, domain=window, window=[-1, 1])
    return SeparablePolynomial(px, Polynomial(base.coef, domain=window, window=[-1, 1]))


def polynomial_bump(center: Sequence[float], radius: float) -> SeparablePolynomial:
    """C² bump (1 - s_x²)³(1 - s_y²)³ supported on the square of half-width `radius`."""
    base = Polynomial([1.0, 0.0, -1.0]) ** 3
    cx, cy = float(center[0]), float(center[1])
    px = Polynomial(base.coef, domain=[cx - radius, cx + radius], window=[-1, 1])
    py = Polynomial(base.coef, domain=[cy - radius, cy + radius], window=[-1, 1])
    return SeparablePolynomial(px, py, support=((cx, radius), (cy, radius)))


class ScaledFunction(AnalyticFunction):
    def __init__(self, factor: float, inner: AnalyticFunction):
        self.factor = float(factor)
        self.inner = inner

    def derivative(self, alpha, X, Y):
        return self.factor * self.inner.derivative(alpha, X, Y)


class ProductFunction(AnalyticFunction):
    """Leibniz rule: D^α(uv) = Σ_{β≤α} C(α,β) D^β u D^{α-β} v."""

    def __init__(self, u: AnalyticFunction, v: AnalyticFunction):
        self.u = u
        self.v = v

    def derivative(self, alpha, X, Y):
        total = 0.0
        for b0 in range(alpha[0] + 1):
            for b1 in range(alpha[1] + 1):
                coefficient = comb(alpha[0], b0) * comb(alpha[1], b1)
                du = self.u.derivative((b0, b1), X, Y)
                dv = self.v.derivative((alpha[0] - b0, alpha[1] - b1), X, Y)
                total = total + coefficient * du * dv
        return total


def singular_model(exponent: float = 2.0 / 3.0, half_width: float = 1.0) -> ProductFunction:
    """r^λ sin(λφ)·cutoff: the model corner singularity of the L-shape, zero on ∂D."""
    return ProductFunction(CornerSingularFunction(exponent), box_cutoff(half_width))


def grid_function(grid: MaskedGrid, func: AnalyticFunction) -> GridFunction:
    """Sample an analytic function on the closed-domain nodes (zero elsewhere)."""
    X, Y = grid.X, grid.Y
    values = np.where(grid.closed, func(X, Y), 0.0)
    return GridFunction(grid=grid, values=values, analytic=func)


def multiply_grid_functions(u: GridFunction, v: GridFunction) -> GridFunction:
    """Pointwise product; analytic derivatives follow the Leibniz rule when both have them."""
    if u.grid is not v.grid and u.grid.shape != v.grid.shape:
        raise ValueError("Grid functions live on different grids")
    analytic = None
    if u.analytic is not None and v.analytic is not None:
        analytic = ProductFunction(u.analytic, v.analytic)
    return GridFunction(grid=u.grid, values=u.values * v.values, analytic=analytic)
