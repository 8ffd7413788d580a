from itertools import combinations

import numpy as np
import pytest

from src.besov import (
    AdaptivityScalePoint,
    BesovParams,
    NTermCurve,
    SmoothnessScale,
    adaptivity_norm,
    besov_membership_ceiling,
    besov_quasinorm,
    best_n_term,
    estimate_from_level_sums,
    estimate_smoothness,
    fit_rate,
    n_term_curve,
    running_rate,
)
from src.errors import InsufficientDataError, ParameterError
from src.geometry import make_grid, make_l_shape
from src.kondratiev import grid_function, singular_model
from src.wavelet import (
    FilterFamily,
    box_samples,
    forward_transform,
    interior_mask,
    make_system,
    unit_coefficients,
)


def _single_detail(j, d=2):
    system = make_system(FilterFamily.HAAR, d=d)
    return unit_coefficients(system, side=1, grid_level=j + 2, level=j, kind=1)


def _synthetic(levels, beta, p, d=1, seed=0):
    """Coefficients with level sums exactly 2^{-jβ} (one nonzero entry per level)."""
    system = make_system(FilterFamily.HAAR, d=d)
    coeffs = unit_coefficients(system, side=1, grid_level=levels, level=0, kind=1)
    for j in range(levels):
        array = coeffs.details[j][system.detail_keys[0]]
        array[...] = 0.0
        array.flat[0] = 2.0 ** (-j * beta)
    return coeffs


class TestQuasinorm:
    @pytest.mark.parametrize("j", [0, 2, 4])
    def test_single_detail(self, j):
        params = BesovParams(s=1.5, p=2, q=2, d=2)
        assert besov_quasinorm(_single_detail(j), params) == pytest.approx(2 ** (j * 1.5))

    def test_formal_zero_smoothness_is_l2(self):
        rng = np.random.default_rng(5)
        system = make_system(FilterFamily.DB2, d=1)
        coeffs = forward_transform(rng.standard_normal(64), system, 1 / 64).scaled(1.0)
        coeffs.scaling[...] = 0.0
        params = BesovParams(s=0.0, p=2, q=2, d=1)
        assert besov_quasinorm(coeffs, params, check_hypothesis=False) == pytest.approx(
            np.sqrt(coeffs.energy())
        )
        with pytest.raises(ParameterError):
            besov_quasinorm(coeffs, params)

    def test_formal_zero_smoothness_counts_scaling_coefficients(self):
        rng = np.random.default_rng(6)
        system = make_system(FilterFamily.DB2, d=2)
        coeffs = forward_transform(rng.standard_normal((32, 32)), system, 1 / 32)
        assert np.any(coeffs.scaling)
        value = besov_quasinorm(coeffs, BesovParams(s=0.0, p=2, q=2, d=2), check_hypothesis=False)
        assert value == pytest.approx(np.sqrt(coeffs.energy()), rel=1e-12)

    def test_geometric_series_oracle(self):
        beta, p, q, d = 2.0, 2.0, 2.0, 1
        levels = 14
        coeffs = _synthetic(levels, beta, p, d=d)
        s = beta - 0.1 - d * (0.5 - 1 / p)
        value = besov_quasinorm(coeffs, BesovParams(s=s, p=p, q=q, d=d))
        ratio = 2 ** (-0.1 * q)
        # partial geometric series; the infinite one is (1 - ratio)^{-1/q}
        expected = ((1 - ratio**levels) / (1 - ratio)) ** (1 / q)
        assert value == pytest.approx(expected, rel=1e-12)
        assert value < (1 - ratio) ** (-1 / q)

    def test_homogeneity_and_monotone_in_s(self):
        rng = np.random.default_rng(9)
        system = make_system(FilterFamily.DB2, d=2)
        coeffs = forward_transform(rng.standard_normal((32, 32)), system, 1 / 32)
        params = BesovParams(s=1.0, p=1.5, q=3, d=2)
        base = besov_quasinorm(coeffs, params)
        assert besov_quasinorm(coeffs.scaled(-2.5), params) == pytest.approx(2.5 * base, rel=1e-12)
        values = [besov_quasinorm(coeffs, BesovParams(s=s, p=1.5, q=3, d=2)) for s in (0.8, 1.2, 2.0)]
        assert values == sorted(values)


class TestAdaptivityNorm:
    def test_tau(self):
        assert AdaptivityScalePoint(s=1, p=2, d=2).tau == pytest.approx(1.0)

    def test_matches_besov_with_tau(self):
        coeffs = _single_detail(3)
        point = AdaptivityScalePoint(s=1.3, p=2, d=2)
        expected = besov_quasinorm(coeffs, BesovParams(s=1.3, p=point.tau, q=point.tau, d=2))
        assert adaptivity_norm(coeffs, point) == expected

    def test_level_zero_coefficient(self):
        for s, p in [(0.5, 2), (2.0, 3), (1.0, 1.5)]:
            assert adaptivity_norm(_single_detail(0), AdaptivityScalePoint(s=s, p=p)) == pytest.approx(1.0)

    def test_l1_sum_at_level_zero(self):
        system = make_system(FilterFamily.HAAR, d=2)
        coeffs = unit_coefficients(system, side=1, grid_level=2, level=0, kind=1)
        coeffs.details[0]["da"][0, 0] = 0.5
        coeffs.details[0]["dd"][0, 0] = 0.25
        assert adaptivity_norm(coeffs, AdaptivityScalePoint(s=1, p=2, d=2)) == pytest.approx(1.75)


class TestBestNTerm:
    def test_single_wavelet_is_exact(self):
        assert best_n_term(_single_detail(2), 1).sigma == 0.0

    def test_sorted_tail(self):
        values = [1.0, 3.0, 2.0]
        assert best_n_term(values, 1).sigma == pytest.approx(np.sqrt(5))
        assert best_n_term(values, 2).sigma == pytest.approx(1.0)
        assert best_n_term(values, 3).sigma == 0.0
        assert list(best_n_term(values, 1).retained) == [1]

    def test_ties_broken_by_position(self):
        result = best_n_term([2.0, 2.0, 2.0], 2)
        assert list(result.retained) == [0, 1]

    def test_brute_force_optimality(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            size = int(rng.integers(1, 13))
            values = rng.integers(-5, 6, size=size).astype(float)
            for n in range(size + 1):
                squares = values**2
                best = np.sqrt(
                    squares.sum() - max(squares[list(keep)].sum() for keep in combinations(range(size), n))
                )
                assert best_n_term(values, n).sigma == pytest.approx(best, abs=1e-12)

    def test_curve_properties(self):
        rng = np.random.default_rng(1)
        system = make_system(FilterFamily.DB3, d=2)
        coeffs = forward_transform(rng.standard_normal((32, 32)), system, 1 / 32)
        curve = n_term_curve(coeffs, p=2)
        assert np.all(np.diff(curve.sigma) <= 1e-15)
        assert curve.sigma[0] == pytest.approx(np.sqrt(coeffs.energy()))
        assert curve.sigma[-1] == 0.0
        assert curve.sigma[10] == pytest.approx(best_n_term(coeffs, 10).sigma)


class TestFitRate:
    def test_exact_power_law(self):
        n = np.arange(1, 200)
        assert fit_rate(NTermCurve(n, 1.0 / n, 2), d=2).s_est == pytest.approx(2.0, abs=1e-10)
        fit = fit_rate(NTermCurve(n, 5 * n**-0.75, 2), d=3)
        assert fit.s_est == pytest.approx(2.25, abs=1e-10)
        assert fit.r_squared == pytest.approx(1.0)

    def test_constant_curve(self):
        n = np.arange(1, 50)
        assert fit_rate(NTermCurve(n, np.full(49, 0.3), 2), d=2).s_est == 0

    def test_insufficient_points(self):
        with pytest.raises(InsufficientDataError):
            fit_rate(NTermCurve(np.arange(4), np.array([1.0, 0.5, 0.2, 0.0]), 2), d=2)

    def test_window(self):
        n = np.arange(1, 100)
        sigma = np.where(n < 10, 1.0, 10.0 / n)
        assert fit_rate(NTermCurve(n, sigma, 2), d=1, window=(10, 99)).s_est == pytest.approx(1.0)


class TestRunningRate:
    def test_power_law_from_the_fourth_point(self):
        n = np.arange(0, 60)
        sigma = np.concatenate([[2.0], 3.0 * n[1:] ** -0.5])
        running = running_rate(NTermCurve(n, sigma, 2), d=2)
        assert np.all(np.isnan(running[:4]))
        assert running[4:] == pytest.approx(np.full(56, 1.0), abs=1e-10)

    def test_start_and_zero_tail(self):
        n = np.arange(0, 40)
        sigma = np.where(n < 10, 1.0, 10.0 / np.maximum(n, 1))
        sigma[-1] = 0.0
        running = running_rate(NTermCurve(n, sigma, 2), d=1, start=10)
        assert np.all(np.isnan(running[:13]))
        assert running[13] == pytest.approx(1.0)
        # σ_N = 0 adds no point
        assert running[-1] == running[-2]

    def test_last_entry_matches_fit_rate(self):
        rng = np.random.default_rng(2)
        curve = n_term_curve(rng.standard_normal(300), p=2)
        running = running_rate(curve, d=1, start=5)
        fit = fit_rate(curve, d=1, window=(5, 300))
        assert running[-1] == pytest.approx(fit.s_est, rel=1e-9)


class TestSmoothness:
    def test_level_sum_formula(self):
        sums = 2.0 ** (-2.0 * np.arange(10))
        assert estimate_from_level_sums(sums, p=2, d=2).s_est == pytest.approx(2.0)
        assert estimate_from_level_sums(sums, p=1, d=2).s_est == pytest.approx(3.0)

    def test_non_decaying(self):
        estimate = estimate_from_level_sums(np.ones(10), p=2, d=2)
        assert estimate.s_est == 0.0
        assert estimate.diagnostic

    def test_from_coefficients(self):
        coeffs = _synthetic(12, beta=1.25, p=2)
        assert estimate_smoothness(coeffs, p=2).s_est == pytest.approx(1.25)

    def test_ceiling(self):
        assert besov_membership_ceiling(2.5, 1, 1) == 2.5
        assert besov_membership_ceiling(4.0, 1, 1) == 3.0
        assert besov_membership_ceiling(4.0, 1, 0) == 4.0


@pytest.fixture(scope="module")
def l_shape_singular():
    domain = make_l_shape()
    h = 1 / 256
    grid = make_grid(domain, h)
    u = grid_function(grid, singular_model())
    system = make_system(FilterFamily.DB3, d=2)
    samples, origin, _ = box_samples(grid, u.values)
    coeffs = forward_transform(samples, system, h, origin=origin)
    return coeffs, domain


class TestCornerSingularity:
    def test_sobolev_estimate_near_five_thirds(self, l_shape_singular):
        coeffs, domain = l_shape_singular
        estimate = estimate_smoothness(coeffs, p=2, mask=interior_mask(coeffs, domain))
        assert estimate.s_est == pytest.approx(5 / 3, abs=0.15)
        lo, hi = estimate.window
        assert hi - lo + 1 >= 4

    def test_adaptivity_gain(self, l_shape_singular):
        coeffs, domain = l_shape_singular
        mask = interior_mask(coeffs, domain)
        sobolev = estimate_smoothness(coeffs, p=2, mask=mask)
        adaptive = estimate_smoothness(coeffs, p=2, mask=mask, scale=SmoothnessScale.ADAPTIVITY)
        assert adaptive.s_est - sobolev.s_est >= 0.5

    def test_corner_supports_drive_the_estimate(self, l_shape_singular):
        coeffs, domain = l_shape_singular
        with_corner = estimate_smoothness(coeffs, p=2, mask=interior_mask(coeffs, domain))
        covered_only = estimate_smoothness(coeffs, p=2, mask=interior_mask(coeffs, domain, keep_singular=False))
        assert with_corner.s_est < covered_only.s_est
