import math

import numpy as np
import pytest

from src.config import get_config
from src.errors import ConfigError, EllipticityError, ParameterError, SolverDiagnosticError
from src.geometry import make_grid, make_l_shape, make_unit_square, polygon_domain
from src.parabolic import (
    Assembler,
    OperatorCoefficients,
    ParabolicProblem,
    Scheme,
    a_priori_ratio,
    coercivity_margin,
    compatibility_residuals,
    discrete_residual,
    make_coefficients,
    make_forcing,
    mms_error,
    observed_order,
    rothe_solve,
)


def make_problem(domain, coefficients="laplace", forcing="manufactured", final_time=0.25, **kwargs):
    coeffs = make_coefficients(coefficients)
    f, exact = make_forcing(forcing, coeffs)
    return ParabolicProblem(domain, final_time, coeffs, forcing=f, exact=exact, name=forcing, **kwargs)


class TestSolve:
    def test_zero_forcing_gives_zero_solution(self):
        problem = make_problem(make_l_shape(), forcing="zero")
        solution = rothe_solve(problem, 1 / 8, 0.05)
        assert all(np.all(u == 0.0) for u in solution.snapshots)

    def test_boundary_and_initial_values(self):
        problem = make_problem(make_l_shape(), forcing="constant-t")
        solution = rothe_solve(problem, 1 / 8, 0.05)
        grid = solution.grid
        assert np.all(solution.snapshots[0] == 0.0)
        assert all(np.all(u[~grid.interior] == 0.0) for u in solution.snapshots)
        assert len(solution.times) == 6 and solution.times[-1] == pytest.approx(0.25)

    def test_maximum_principle(self):
        problem = make_problem(make_l_shape(), forcing="constant-t", final_time=0.5)
        solution = rothe_solve(problem, 1 / 8, 0.05)
        assert min(u.min() for u in solution.snapshots) >= -1e-12
        assert solution.final.max() > 0

    def test_energy_decays_after_warm_start(self):
        coeffs = make_coefficients("anisotropic")
        problem = ParabolicProblem(
            make_unit_square(),
            0.5,
            coeffs,
            initial=lambda X, Y: np.sin(math.pi * X) * np.sin(2 * math.pi * Y) + X * Y * (1 - X) * (1 - Y),
        )
        solution = rothe_solve(problem, 1 / 16, 0.02)
        norms = [solution.grid.l2_norm(u) for u in solution.snapshots]
        assert norms[0] > 0
        assert all(b <= a * (1 + 1e-9) for a, b in zip(norms, norms[1:]))

    def test_manufactured_convergence_in_space(self):
        problem = make_problem(make_unit_square())
        errors = [mms_error(problem, h, h**2).max_error for h in (1 / 8, 1 / 16, 1 / 32)]
        assert errors[0] / errors[1] >= 3.6
        assert min(observed_order(errors)) >= 1.9

    def test_crank_nicolson_second_order(self):
        problem = make_problem(make_unit_square(), forcing="manufactured-sine-time", final_time=0.5)
        errors = [
            mms_error(problem, h, h / 4, scheme=Scheme.CRANK_NICOLSON).max_error for h in (1 / 8, 1 / 16, 1 / 32)
        ]
        assert observed_order(errors)[-1] >= 1.9

    def test_manufactured_on_l_shape(self):
        problem = make_problem(make_l_shape())
        table = mms_error(problem, 1 / 16, 1 / 256)
        assert table.errors[0] == 0.0
        assert table.max_error < 5e-3
        assert table.l2_time_error <= table.max_error

    def test_zero_pair_has_zero_error(self):
        table = mms_error(make_problem(make_unit_square(), forcing="zero"), 1 / 8, 0.05)
        assert table.max_error == 0.0

    def test_boundary_violation_rejected(self):
        half = polygon_domain([(0, 0), (0.5, 0), (0.5, 0.5), (0, 0.5)], name="half")
        with pytest.raises(ParameterError):
            mms_error(make_problem(half), 1 / 8, 0.05)

    def test_non_elliptic(self):
        coeffs = OperatorCoefficients(a11=-1.0, name="bad")
        with pytest.raises(EllipticityError):
            rothe_solve(ParabolicProblem(make_unit_square(), 0.1, coeffs), 1 / 8, 0.05)

    def test_solver_stagnation(self, monkeypatch):
        monkeypatch.setattr(get_config(), "SOLVER_MAXITER", 1)
        with pytest.raises(SolverDiagnosticError) as raised:
            rothe_solve(make_problem(make_unit_square(), forcing="bump"), 1 / 16, 0.05)
        assert raised.value.step == 1

    def test_first_order_terms_use_bicgstab(self):
        coeffs = OperatorCoefficients(b1=1.0, b2=-0.5, c=0.5, name="advective")
        f, exact = make_forcing("manufactured", coeffs)
        problem = ParabolicProblem(make_unit_square(), 0.25, coeffs, forcing=f, exact=exact)
        assert mms_error(problem, 1 / 16, 1 / 256).max_error < 1e-2

    def test_forcing_arrays_match_callback(self):
        problem = make_problem(make_unit_square(), forcing="bump")
        grid = make_grid(problem.domain, 1 / 16)
        reference = rothe_solve(problem, 1 / 16, 0.05)
        arrays = [problem.forcing_values(t, grid) for t in reference.times]
        replay = rothe_solve(problem, 1 / 16, 0.05, forcing_steps=arrays)
        assert np.allclose(replay.final, reference.final, atol=1e-14)
        assert discrete_residual(replay, problem, arrays) < 1e-6
        with pytest.raises(ParameterError):
            rothe_solve(problem, 1 / 16, 0.05, forcing_steps=arrays[:-1])

    def test_a_priori_ratio_is_stable(self):
        problem = make_problem(make_l_shape(), forcing="bump", final_time=0.25)
        ratios = [a_priori_ratio(rothe_solve(problem, h, 1 / 64), problem) for h in (1 / 16, 1 / 32)]
        assert 0 < ratios[0] and abs(ratios[1] / ratios[0] - 1) < 0.2


class TestAssembly:
    @pytest.mark.parametrize("name", ["laplace", "anisotropic", "time-growing"])
    def test_symmetric(self, name):
        A = Assembler(make_grid(make_l_shape(), 1 / 8)).matrix(make_coefficients(name), 0.3)
        assert abs(A - A.T).max() <= 1e-14 * abs(A).max()

    def test_five_point_stencil(self):
        grid = make_grid(make_unit_square(), 1 / 4)
        A = Assembler(grid).matrix(make_coefficients("laplace"), 0.0).toarray()
        assert A.shape == (9, 9)
        assert np.allclose(np.diag(A), 4 * 16)
        assert A[0, 1] == pytest.approx(-16) and A[0, 4] == 0.0

    def test_first_order_part_is_skew(self):
        assembler = Assembler(make_grid(make_unit_square(), 1 / 8))
        coeffs = OperatorCoefficients(b1=lambda t, X, Y: 1 + X, b2=0.5, name="skew")
        skew = assembler.matrix(coeffs, 0.0) - assembler.laplacian
        assert abs(skew + skew.T).max() < 1e-12


class TestCoercivity:
    def test_laplacian_discrete_oracle(self):
        h = 1 / 16
        lam = 2 * (4 / h**2) * math.sin(math.pi * h / 2) ** 2
        estimate = coercivity_margin(make_problem(make_unit_square(), forcing="zero"), h, samples=2)
        assert estimate.mu == pytest.approx(lam / (1 + lam), rel=1e-8)
        assert estimate.mu > 0

    def test_scaled_coefficients_double(self):
        square = make_unit_square()
        base = coercivity_margin(make_problem(square, forcing="zero"), 1 / 16, samples=1).mu
        doubled = coercivity_margin(make_problem(square, "scaled-laplace", "zero"), 1 / 16, samples=1).mu
        assert doubled / base == pytest.approx(2.0, rel=0.05)

    def test_growing_coefficients_minimum_at_start(self):
        estimate = coercivity_margin(make_problem(make_l_shape(), "time-growing", "zero", final_time=1.0), 1 / 8, 5)
        assert estimate.t_at_min == 0.0
        assert estimate.samples == 5


class TestCompatibility:
    @pytest.fixture
    def grid(self):
        return make_grid(make_unit_square(), 1 / 8)

    @staticmethod
    def g(X, Y):
        return np.sin(math.pi * X) * np.sin(math.pi * Y)

    def test_vanishing_jet(self, grid):
        residuals = compatibility_residuals(lambda t, X, Y: t**2 * self.g(X, Y), grid, 1)
        assert len(residuals) == 2 and max(residuals) < 1e-8

    def test_constant_in_time(self, grid):
        norm = grid.l2_norm(self.g(grid.X, grid.Y))
        residuals = compatibility_residuals(lambda t, X, Y: self.g(X, Y), grid, 0)
        assert residuals[0] == pytest.approx(norm, rel=1e-12) and norm > 0

    def test_sine_in_time(self, grid):
        norm = grid.l2_norm(self.g(grid.X, grid.Y))
        residuals = compatibility_residuals(lambda t, X, Y: math.sin(t) * self.g(X, Y), grid, 1)
        assert residuals[0] < 1e-12
        assert residuals[1] == pytest.approx(norm, rel=1e-6)


def test_scheme_labels():
    assert Scheme.from_label("CN") is Scheme.CRANK_NICOLSON
    assert Scheme.from_label("implicit-euler") is Scheme.IMPLICIT_EULER
    with pytest.raises(ParameterError):
        Scheme.from_label("leapfrog")


def test_unknown_registry_names():
    with pytest.raises(ConfigError):
        make_coefficients("porous")
    with pytest.raises(ConfigError):
        make_forcing("storm", make_coefficients("laplace"))
