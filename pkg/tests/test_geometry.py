import math

import numpy as np
import pytest

from src.errors import (
    ConfigError,
    DomainMembershipError,
    GridShapeError,
    ParameterError,
    VertexIndexError,
)
from src.geometry import (
    PrismDomain,
    distance_weight,
    domain_from_config,
    domain_to_config,
    exterior_turning_sum,
    interior_angle,
    load_domain,
    make_grid,
    make_l_shape,
    make_slit_domain,
    make_unit_square,
    polygon_domain,
    save_domain,
)


class TestLShape:
    def test_single_singular_vertex_at_origin(self):
        domain = make_l_shape()
        assert domain.singular_set.points == ((0.0, 0.0),)
        assert interior_angle(domain, 0) == pytest.approx(3 * math.pi / 2)
        assert domain.delta == 0

    def test_convex_corners_are_right_angles(self):
        domain = make_l_shape()
        for i in range(1, len(domain.vertices)):
            assert interior_angle(domain, i) == pytest.approx(math.pi / 2)

    def test_area(self):
        assert make_l_shape().area == pytest.approx(3.0)


def test_unit_square_angles():
    domain = make_unit_square()
    assert all(a == pytest.approx(math.pi / 2) for a in domain.opening_angles)
    assert domain.singular_set.is_empty


def test_slit_crack_tip_has_full_angle():
    domain = make_slit_domain()
    assert interior_angle(domain, 0) == pytest.approx(2 * math.pi)


@pytest.mark.parametrize("factory", [make_l_shape, make_unit_square, make_slit_domain])
def test_exterior_turning_angles_sum_to_two_pi(factory):
    assert exterior_turning_sum(factory()) == pytest.approx(2 * math.pi)


def test_vertex_index_out_of_range():
    with pytest.raises(VertexIndexError):
        interior_angle(make_l_shape(), 6)
    with pytest.raises(IndexError):
        interior_angle(make_l_shape(), -1)


class TestValidation:
    def test_clockwise_polygon_rejected(self):
        with pytest.raises(ParameterError):
            polygon_domain([(0, 0), (0, 1), (1, 1), (1, 0)])

    def test_non_axis_aligned_rejected(self):
        with pytest.raises(ParameterError):
            polygon_domain([(0, 0), (1, 0), (0, 1)])

    def test_self_intersecting_rejected(self):
        # two squares touching along a crossing boundary
        vertices = [(0, 0), (2, 0), (2, 1), (1, 1), (1, -1), (3, -1), (3, 2), (0, 2)]
        with pytest.raises(ParameterError):
            polygon_domain(vertices)


class TestDistanceWeight:
    def test_examples(self):
        domain = make_l_shape()
        assert distance_weight(domain, (0.5, 0.5)) == pytest.approx(math.sqrt(0.5))
        assert distance_weight(domain, (0.0, 0.0)) == 0.0
        assert distance_weight(domain, (-0.9, 0.9)) == 1.0

    def test_outside_point_rejected(self):
        with pytest.raises(DomainMembershipError):
            distance_weight(make_l_shape(), (0.5, -0.5))

    def test_lipschitz_and_clamped(self):
        domain = make_l_shape()
        rng = np.random.default_rng(7)
        points = rng.uniform(-1, 1, size=(400, 2))
        points = points[~((points[:, 0] > 0) & (points[:, 1] < 0))]
        values = np.array([distance_weight(domain, p) for p in points])
        assert np.all(values <= 1.0)
        for (p, q), (rp, rq) in zip(zip(points[:-1], points[1:]), zip(values[:-1], values[1:])):
            assert abs(rp - rq) <= np.linalg.norm(p - q) + 1e-12

    def test_zero_only_on_singular_set(self):
        domain = make_l_shape()
        assert distance_weight(domain, (1e-13, 0.0)) < 1e-12
        assert distance_weight(domain, (1e-3, 1e-3)) > 0

    def test_prism_uses_horizontal_distance(self):
        prism = PrismDomain(base=make_l_shape(), height=2.0)
        assert prism.delta == 1
        assert distance_weight(prism, (0.3, 0.4, 1.7)) == pytest.approx(0.5)
        assert len(prism.singular_set.segments) == 1
        with pytest.raises(DomainMembershipError):
            distance_weight(prism, (0.3, 0.4, 2.5))


class TestConfigRoundTrip:
    def test_exact_echo(self, tmp_path):
        domain = polygon_domain(
            [(0, 0), (0.1, 0), (0.1, 0.3), (0, 0.3)], singular_vertices=[2], name="thin"
        )
        path = save_domain(domain, tmp_path / "domain.env")
        loaded = load_domain(path)
        assert loaded.vertices == domain.vertices
        assert loaded.singular_vertices == (2,)
        assert loaded.name == "thin"

    def test_named_domain(self):
        assert domain_from_config({"domain": "slit"}).name == "slit"
        with pytest.raises(ConfigError):
            domain_from_config({"domain": "disc"})

    def test_config_keys(self):
        values = domain_to_config(make_l_shape())
        assert values["domain_singular_vertices"] == "0"


class TestMaskedGrid:
    def test_l_shape_masks(self):
        grid = make_grid(make_l_shape(), 0.25)
        assert grid.shape == (9, 9)
        i0 = 4  # node (0, 0)
        assert grid.closed[i0, i0] and not grid.interior[i0, i0]
        # lower right quadrant is outside
        assert not grid.closed[6, 2]
        assert grid.cells.sum() == 3 * 16

    def test_unresolved_vertex(self):
        with pytest.raises(GridShapeError):
            make_grid(make_l_shape(), 0.3)

    def test_discrete_norms_of_sine(self):
        grid = make_grid(make_unit_square(), 1 / 64)
        u = np.sin(np.pi * grid.X) * np.sin(np.pi * grid.Y)
        assert grid.l2_norm(u) == pytest.approx(0.5, rel=1e-3)
        assert grid.h1_seminorm(u) == pytest.approx(np.pi / math.sqrt(2), rel=1e-3)

    def test_scatter_gather(self):
        grid = make_grid(make_l_shape(), 0.5)
        vec = np.arange(grid.n_unknowns, dtype=float) + 1
        assert np.array_equal(grid.gather(grid.scatter(vec)), vec)
