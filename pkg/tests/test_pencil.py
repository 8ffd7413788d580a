import math

import numpy as np
import pytest

from src.errors import EllipticityError, ParameterError
from src.pencil import (
    WedgePencil,
    WeightBudget,
    delta_strips,
    delta_strips_over_time,
    dirichlet_laplace_wedge_eigenvalues,
    pencil_spectrum_numeric,
    transformed_opening_angle,
    vertex_strip_free,
    weight_admissible,
    write_admissibility_table,
)
from src.utils.format_utils import read_csv

ANGLES = [math.pi / 2, 2 * math.pi / 3, math.pi, 3 * math.pi / 2, 2 * math.pi]


class TestClosedForm:
    def test_half_plane(self):
        assert dirichlet_laplace_wedge_eigenvalues(math.pi, 2) == [-2.0, -1.0, 1.0, 2.0]

    def test_l_shape_corner(self):
        lams = dirichlet_laplace_wedge_eigenvalues(3 * math.pi / 2, 1)
        assert lams[1] == pytest.approx(2 / 3, abs=1e-15)

    def test_slit(self):
        assert dirichlet_laplace_wedge_eigenvalues(2 * math.pi, 1)[1] == pytest.approx(0.5)

    @pytest.mark.parametrize("theta, count", [(0.0, 1), (7.0, 1), (math.pi, 0)])
    def test_bad_arguments(self, theta, count):
        with pytest.raises(ParameterError):
            dirichlet_laplace_wedge_eigenvalues(theta, count)

    @pytest.mark.parametrize("theta", ANGLES)
    def test_delta_strips_closed_form(self, theta):
        assert delta_strips(WedgePencil(theta)) == (math.pi / theta, math.pi / theta)

    def test_delta_decreasing_in_theta(self):
        deltas = [delta_strips(WedgePencil(theta))[0] for theta in ANGLES]
        assert all(a > b for a, b in zip(deltas, deltas[1:]))


class TestShooting:
    @pytest.mark.parametrize("theta", ANGLES)
    def test_laplacian_matches_closed_form(self, theta):
        report = pencil_spectrum_numeric(WedgePencil(theta), strip=(-4.0, 4.0), imag_window=0.0)
        positive = sorted(z.real for z in report.eigenvalues if z.real > 0)
        expected = [k * math.pi / theta for k in range(1, 20) if k * math.pi / theta <= 4.0 + 1e-9]
        assert len(positive) == len(expected)
        assert np.max(np.abs(np.array(positive) - expected)) < 1e-8
        assert report.delta_minus == pytest.approx(math.pi / theta, abs=1e-8)
        assert report.delta_plus == pytest.approx(math.pi / theta, abs=1e-8)

    @pytest.mark.parametrize("theta", [math.pi / 2, 3 * math.pi / 2])
    def test_spectrum_symmetric_about_energy_line(self, theta):
        report = pencil_spectrum_numeric(WedgePencil(theta), strip=(-4.0, 4.0), imag_window=0.0)
        lams = np.array([z.real for z in report.eigenvalues])
        assert np.max(np.abs(lams + lams[::-1])) < 1e-8
        assert np.all(np.abs(lams) > 1e-8)

    def test_laplacian_has_no_complex_eigenvalues(self):
        report = pencil_spectrum_numeric(WedgePencil(3 * math.pi / 2), strip=(-2.0, 2.0), imag_window=1.0)
        assert all(abs(z.imag) < 1e-12 for z in report.eigenvalues)
        assert len(report.eigenvalues) == 6

    def test_transformed_angle(self):
        A = np.diag([4.0, 1.0])
        assert transformed_opening_angle(WedgePencil(math.pi / 2, A)) == pytest.approx(2 * math.atan(2.0))
        assert transformed_opening_angle(WedgePencil(math.pi, A)) == pytest.approx(math.pi)
        assert transformed_opening_angle(WedgePencil(2 * math.pi, A)) == pytest.approx(2 * math.pi)

    @pytest.mark.parametrize("theta", [math.pi / 2, math.pi, 3 * math.pi / 2])
    def test_anisotropic_matches_stretched_laplacian(self, theta):
        pencil = WedgePencil(theta, np.diag([4.0, 1.0]), bisector=0.3)
        expected = math.pi / transformed_opening_angle(pencil)
        report = pencil_spectrum_numeric(pencil, strip=(-3.0, 3.0), imag_window=0.0)
        smallest = min(z.real for z in report.eigenvalues if z.real > 0)
        assert smallest == pytest.approx(expected, abs=1e-6)
        assert delta_strips(pencil)[1] == pytest.approx(expected, abs=1e-6)

    def test_not_elliptic(self):
        with pytest.raises(EllipticityError):
            WedgePencil(math.pi, np.diag([1.0, -1.0]))

    def test_higher_order_rejected(self):
        with pytest.raises(ParameterError):
            WedgePencil(math.pi, m=2)

    def test_infimum_over_time(self):
        times = np.linspace(0.0, 1.0, 3)
        lower, upper = delta_strips_over_time(
            lambda t: WedgePencil(math.pi / 2, np.diag([1.0 + 3.0 * t, 1.0])), times
        )
        expected = math.pi / (2 * math.atan(2.0))
        assert lower == pytest.approx(expected, abs=1e-6)
        assert upper == pytest.approx(expected, abs=1e-6)
        with pytest.raises(ParameterError):
            delta_strips_over_time(lambda t: WedgePencil(math.pi), [])


class TestWeights:
    def test_l_shape_interval(self):
        delta = 2 / 3
        report = weight_admissible(WeightBudget(m=1, a=-0.5, gamma=2, delta_minus=[delta], delta_plus=[delta]))
        interval = report.interval
        assert interval.lower == -1 and interval.lower_closed
        assert interval.upper == pytest.approx(-1 / 3) and not interval.upper_closed
        assert str(interval) == "[-1, -0.3333333333)"
        assert interval.contains(-1.0) and not interval.contains(-1 / 3)
        assert report.all_passed

    def test_failing_weight(self):
        report = weight_admissible(WeightBudget(m=1, a=0.0, gamma=2, delta_minus=[2 / 3], delta_plus=[2 / 3]))
        assert not report.all_passed
        failing = [v for v in report.verdicts if not v.passed]
        assert len(failing) == 1 and failing[0].i == 0

    def test_convex_corner(self):
        report = weight_admissible(WeightBudget(m=1, a=0.0, gamma=2, delta_minus=[2.0], delta_plus=[2.0]))
        assert str(report.interval) == "[-1, 1)"

    @pytest.mark.parametrize("theta", ANGLES)
    def test_b_prime_always_passes(self, theta):
        delta = math.pi / theta
        report = weight_admissible(WeightBudget(m=1, a=1.0, gamma=5, delta_minus=[delta], delta_plus=[delta]))
        b_prime = [v for v in report.verdicts if v.i is None]
        assert len(b_prime) == 1 and b_prime[0].passed and b_prime[0].b == -1.0

    def test_high_smoothness_empties_interval(self):
        budget = WeightBudget(m=1, a=-1.0, gamma=3, delta_minus=[2.0], delta_plus=[2.0])
        assert budget.gamma_m == 1 and budget.b_values == [1.0, -1.0]
        assert weight_admissible(budget).interval.is_empty

    def test_intersection_over_vertices(self):
        report = weight_admissible(
            WeightBudget(m=1, a=-0.9, gamma=2, delta_minus=[2.0, 0.5], delta_plus=[2.0, 0.5])
        )
        assert report.interval.upper == pytest.approx(-0.5)
        assert len(report.verdicts) == 4

    def test_budget_validation(self):
        with pytest.raises(ParameterError):
            WeightBudget(m=1, a=2.0, gamma=2, delta_minus=[1.0], delta_plus=[1.0])
        with pytest.raises(ParameterError):
            weight_admissible(WeightBudget(m=1, a=0.0, gamma=2, delta_minus=[], delta_plus=[]))

    def test_table(self, tmp_path):
        report = weight_admissible(WeightBudget(m=1, a=-0.5, gamma=2, delta_minus=[2 / 3], delta_plus=[2 / 3]))
        rows = read_csv(write_admissibility_table(report, tmp_path / "weights.csv"))
        assert [row["pass"] for row in rows] == ["true", "true"]
        assert rows[1]["i"] == "b'"


class TestVertexStrip:
    def test_free(self):
        assert vertex_strip_free([-1.0, 1.0], b=0.0, b_prime=-1.0, m=1)

    def test_blocked(self):
        assert not vertex_strip_free([-0.5, 0.5], b=0.0, b_prime=-1.0, m=1)

    def test_closed_edges(self):
        # the boundary line itself counts
        assert not vertex_strip_free([0.3 + 0.2j], b=-0.2, b_prime=-1.0, m=1)
