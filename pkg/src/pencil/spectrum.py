"""Edge pencil spectra: closed forms and the shooting method on (-θ/2, θ/2)."""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq, newton

from src.config import get_config
from src.errors import ParameterError, UnresolvedRootError

from .types import StripReport, WedgePencil

logger = logging.getLogger(__name__)


def dirichlet_laplace_wedge_eigenvalues(theta: float, count: int) -> List[float]:
    """±kπ/θ for k = 1..count, ascending."""
    if not 0 < theta <= 2 * math.pi + 1e-12:
        raise ParameterError(f"Opening angle must lie in (0, 2π], got {theta}")
    if count < 1:
        raise ParameterError("count must be at least 1")
    positive = [k * math.pi / theta for k in range(1, count + 1)]
    return sorted([-lam for lam in positive] + positive)


def transformed_opening_angle(pencil: WedgePencil) -> float:
    """
    Opening angle of the wedge after the change of variables y = A^{-1/2}x that
    maps div(A∇·) to the Laplacian. Eigenvalues are then kπ/θ'.
    """
    w, V = np.linalg.eigh(pencil.coefficients)
    T = V @ np.diag(w**-0.5) @ V.T
    lo = pencil.bisector - pencil.theta / 2
    hi = pencil.bisector + pencil.theta / 2
    e_lo = T @ np.array([math.cos(lo), math.sin(lo)])
    e_hi = T @ np.array([math.cos(hi), math.sin(hi)])
    angle = math.atan2(e_hi[1], e_hi[0]) - math.atan2(e_lo[1], e_lo[0])
    angle = angle % (2 * math.pi)
    if angle < 1e-12:
        angle = 2 * math.pi
    return angle


def _polar_coefficients(pencil: WedgePencil, phi: np.ndarray):
    A = pencil.coefficients
    angle = phi + pencil.bisector
    c, s = np.cos(angle), np.sin(angle)
    a_rr = A[0, 0] * c**2 + 2 * A[0, 1] * c * s + A[1, 1] * s**2
    a_pp = A[0, 0] * s**2 - 2 * A[0, 1] * c * s + A[1, 1] * c**2
    a_rp = (A[1, 1] - A[0, 0]) * c * s + A[0, 1] * (c**2 - s**2)
    return a_rr, a_rp, a_pp


def pencil_determinant(pencil: WedgePencil, lams: Sequence[complex]) -> np.ndarray:
    """
    D(λ) = U(θ/2) for the solution of
        A_φφ U'' + 2(λ-1) A_rφ U' + (λ(λ-1) A_rr + λ A_φφ) U = 0,
        U(-θ/2) = 0, U'(-θ/2) = 1,
    for every λ at once (one vectorised integration).
    """
    config = get_config()
    lams = np.atleast_1d(np.asarray(lams, dtype=complex))
    n = len(lams)

    def rhs(phi, y):
        a_rr, a_rp, a_pp = _polar_coefficients(pencil, phi)
        U, V = y[:n], y[n:]
        dV = -(2 * (lams - 1) * a_rp * V + (lams * (lams - 1) * a_rr + lams * a_pp) * U) / a_pp
        return np.concatenate([V, dV])

    y0 = np.concatenate([np.zeros(n, dtype=complex), np.ones(n, dtype=complex)])
    half = pencil.theta / 2
    solution = solve_ivp(
        rhs,
        (-half, half),
        y0,
        method="DOP853",
        rtol=config.PENCIL_ODE_RTOL,
        atol=config.PENCIL_ODE_ATOL,
    )
    if not solution.success:
        raise UnresolvedRootError(f"Shooting integration failed: {solution.message}", [])
    return solution.y[:n, -1]


def _single_determinant(pencil: WedgePencil, lam: float) -> float:
    return float(pencil_determinant(pencil, [lam]).real[0])


def _real_roots(pencil: WedgePencil, lo: float, hi: float, step: float) -> List[float]:
    config = get_config()
    pad = 10 * step
    # nodes sit off the rational points where Laplacian roots live
    start = lo - pad + config.PENCIL_GRID_OFFSET * step
    grid = np.arange(start, hi + pad + step / 2, step)
    scan = pencil_determinant(pencil, grid).real
    tol = config.PENCIL_DETERMINANT_TOL * max(1.0, float(np.max(np.abs(scan))))

    roots: List[float] = []
    unresolved = []
    for i in range(len(grid) - 1):
        if scan[i] * scan[i + 1] > 0:
            continue
        a, b = float(grid[i]), float(grid[i + 1])
        # re-evaluate with the evaluator brentq sees
        fa, fb = _single_determinant(pencil, a), _single_determinant(pencil, b)
        if abs(fa) <= tol or abs(fb) <= tol:
            roots.append(a if abs(fa) <= abs(fb) else b)
            continue
        if fa * fb > 0:
            unresolved.append((a, b))
            continue
        try:
            root = brentq(lambda lam: _single_determinant(pencil, lam), a, b, xtol=1e-13, rtol=1e-14)
        except (RuntimeError, ValueError):
            unresolved.append((a, b))
            continue
        roots.append(float(root))
        logger.debug(f"Real root {root:.12f} in [{a:.4f}, {b:.4f}]")
    if unresolved:
        raise UnresolvedRootError(f"{len(unresolved)} real brackets did not converge", unresolved)

    distinct: List[float] = []
    for root in sorted(roots):
        if not distinct or root - distinct[-1] > step / 2:
            distinct.append(root)
    return [r for r in distinct if lo - 1e-9 <= r <= hi + 1e-9]


def _winding_number(pencil: WedgePencil, box: Tuple[float, float, float, float], density: float) -> int:
    x0, x1, y0, y1 = box
    # phase steps must stay below π; roots sit close to the bottom edge
    nx = max(64, int(density * (x1 - x0)))
    ny = max(64, int(density * (y1 - y0)))
    tx = np.linspace(0.0, 1.0, nx, endpoint=False)
    ty = np.linspace(0.0, 1.0, ny, endpoint=False)
    contour = np.concatenate(
        [
            x0 + (x1 - x0) * tx + 1j * y0,
            x1 + 1j * (y0 + (y1 - y0) * ty),
            x1 - (x1 - x0) * tx + 1j * y1,
            x0 + 1j * (y1 - (y1 - y0) * ty),
            [x0 + 1j * y0],
        ]
    )
    values = pencil_determinant(pencil, contour)
    phase = np.unwrap(np.angle(values))
    return int(round((phase[-1] - phase[0]) / (2 * math.pi)))


def _complex_roots(
    pencil: WedgePencil, lo: float, hi: float, imag_lo: float, imag_hi: float, depth: int = 0
) -> List[complex]:
    box = (lo, hi, imag_lo, imag_hi)
    count = _winding_number(pencil, box, density=400.0)
    if count <= 0:
        return []
    width = max(hi - lo, imag_hi - imag_lo)
    if count == 1 and width < 0.5 or depth >= 8:
        guess = complex((lo + hi) / 2, (imag_lo + imag_hi) / 2)
        try:
            root = newton(lambda lam: pencil_determinant(pencil, [lam])[0], guess, tol=1e-12, maxiter=100)
        except RuntimeError:
            raise UnresolvedRootError("Secant refinement of a complex root failed", [box])
        margin = 0.1 * width
        if not (lo - margin <= root.real <= hi + margin and imag_lo - margin <= root.imag <= imag_hi + margin):
            raise UnresolvedRootError("Secant iterate left its rectangle", [box])
        logger.debug(f"Complex root {root} in rectangle {box}")
        return [complex(root)]

    # split the longer side
    if hi - lo >= imag_hi - imag_lo:
        mid = (lo + hi) / 2
        parts = [(lo, mid, imag_lo, imag_hi), (mid, hi, imag_lo, imag_hi)]
    else:
        mid = (imag_lo + imag_hi) / 2
        parts = [(lo, hi, imag_lo, mid), (lo, hi, mid, imag_hi)]
    roots = []
    for part in parts:
        roots.extend(_complex_roots(pencil, *part, depth=depth + 1))
    return roots


def pencil_spectrum_numeric(
    pencil: WedgePencil,
    strip: Optional[Tuple[float, float]] = None,
    imag_window: Optional[float] = None,
) -> StripReport:
    """
    Eigenvalues of the pencil with real part in `strip` by shooting. Real roots come
    from a sign scan refined with brentq; complex roots from winding numbers on
    rectangles above the real axis (with conjugates) refined by the secant method.
    """
    config = get_config()
    if strip is None:
        strip = (-config.PENCIL_SEARCH_HALFWIDTH, config.PENCIL_SEARCH_HALFWIDTH)
    imag_window = config.PENCIL_IMAG_WINDOW if imag_window is None else imag_window
    lo, hi = strip

    eigenvalues: List[complex] = [complex(r) for r in _real_roots(pencil, lo, hi, config.PENCIL_GRID_STEP)]
    if imag_window > 0:
        imag_floor = min(0.05, imag_window / 2)
        for root in _complex_roots(pencil, lo, hi, imag_floor, imag_window):
            eigenvalues.extend([root, root.conjugate()])
    eigenvalues.sort(key=lambda z: (z.real, z.imag))

    delta_minus, delta_plus = strip_radii(eigenvalues, pencil.energy_line, strip)
    logger.info(
        f"Pencil θ={pencil.theta:.6f}: {len(eigenvalues)} eigenvalues, "
        f"δ-={delta_minus:.8f}, δ+={delta_plus:.8f}"
    )
    return StripReport(
        theta=pencil.theta,
        delta_minus=delta_minus,
        delta_plus=delta_plus,
        eigenvalues=eigenvalues,
        method="shooting",
    )


def strip_radii(
    eigenvalues: Sequence[complex], energy_line: float, strip: Tuple[float, float]
) -> Tuple[float, float]:
    """Distances from the energy line to the nearest eigenvalue real part on each side."""
    reals = np.array([complex(z).real for z in eigenvalues])
    right = reals[reals > energy_line] - energy_line
    left = energy_line - reals[reals < energy_line]
    delta_plus = float(right.min()) if right.size else strip[1] - energy_line
    delta_minus = float(left.min()) if left.size else energy_line - strip[0]
    if not right.size or not left.size:
        logger.warning("No eigenvalue on one side of the energy line; δ is the search bound")
    return delta_minus, delta_plus
