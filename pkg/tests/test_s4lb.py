import math

import numpy as np
import pytest

from spflag.core.errors import ChartBoundary, DomainError, TerminationViolated, TooCloseToPole
from spflag.core.s4lb import (
    S4Chart,
    angular_metric,
    angular_pullback,
    check_termination,
    einstein_check,
    equator_jump,
    fs_metric,
    gl_coefficients,
    homogeneous_point,
    integrability_profile,
    is_integrable,
    lb_radial_residual,
    omega_grid,
    radial_solution,
    solution_table,
    theta_squared,
)


def test_fs_metric_at_origin():
    np.testing.assert_array_equal(fs_metric(np.zeros(4)), np.eye(4))


def test_homogeneous_point_is_on_unit_sphere(rng):
    x = homogeneous_point(rng.standard_normal(4))
    assert float(x @ x) == pytest.approx(1.0)


def test_angular_metric_rejects_boundary():
    with pytest.raises(ChartBoundary):
        angular_metric(0.0, 1.0)
    with pytest.raises(ChartBoundary):
        S4Chart.angular(1.0, math.pi, 0.0, 0.0)


def test_equator_has_no_inhomogeneous_coordinates():
    with pytest.raises(ChartBoundary):
        S4Chart.angular(math.pi / 2, 1.0, 0.0, 0.0).to_inhomogeneous()


def test_angular_pullback_is_scaled_angular_metric():
    pulled = angular_pullback(0.7, 1.1, 0.3, 2.0)
    np.testing.assert_allclose(pulled, angular_metric(0.7, 1.1) / 16.0, atol=1e-7)


def test_round_sphere_is_einstein(rng):
    points = [rng.uniform(-1.0, 1.0, 4) for _ in range(3)]
    points.append(S4Chart.angular(0.5, 1.2, 0.4, 2.2))
    report = einstein_check(points)
    assert report.lam == pytest.approx(3.0, rel=1e-3)
    assert report.spread < 1e-3
    assert report.off_diagonal < 1e-5
    assert len(report.per_point) == 4


def test_theta_squared():
    assert theta_squared(1.0, 0) == 1.0
    assert theta_squared(2.0, 1) == 1.0
    assert radial_solution(2.0, 2).theta is None


def test_gl_coefficients_single_term():
    (a0,) = gl_coefficients(1.0, 0)
    assert a0 == pytest.approx(2.0 * (-8.0 * math.sqrt(math.pi) / 15.0))


@pytest.mark.parametrize("ell,N", [(1.0, 2), (1.5, 1), (0.5, 0)])
def test_termination_violations(ell, N):
    with pytest.raises(TerminationViolated):
        check_termination(ell, N)


@pytest.mark.parametrize("ell", [-1.0, 0.3])
def test_ell_must_be_half_integer(ell):
    with pytest.raises(DomainError):
        check_termination(ell, 0)


def test_static_solution():
    f = radial_solution(0.0)
    assert f.kind == "f0"
    assert f.theta == 0.0
    with pytest.raises(TerminationViolated):
        radial_solution(0.0, 1)


@pytest.mark.parametrize("ell,N", [(0.0, 0), (1.0, 0), (1.5, 0), (2.0, 1)])
def test_radial_residual_on_grid(ell, N):
    f = radial_solution(ell, N)
    assert max(lb_radial_residual(f, w) for w in omega_grid(50)) < 1e-8


@pytest.mark.parametrize("ell,N", [(1.0, 0), (1.5, 0), (2.0, 1)])
def test_theta_enters_with_arc_length_scale(ell, N):
    f = radial_solution(ell, N)
    grid = omega_grid(50)
    assert max(lb_radial_residual(f, w) for w in grid) < 1e-8
    assert max(lb_radial_residual(f, w, theta_scale=1.0) for w in grid) > 1e-3


def test_residual_near_pole():
    with pytest.raises(TooCloseToPole):
        lb_radial_residual(radial_solution(0.0), 0.01)


def test_omega_grid_contains_equator():
    grid = omega_grid(11)
    assert grid.size == 11
    assert grid[0] == pytest.approx(0.05)
    assert grid[-1] == pytest.approx(math.pi - 0.05)
    assert np.any(grid == math.pi / 2)
    with pytest.raises(DomainError):
        omega_grid(2)


def test_static_solution_is_continuous_at_equator():
    assert equator_jump(radial_solution(0.0)) < 1e-5


def test_integrability():
    f0 = radial_solution(0.0)
    assert is_integrable(f0)
    assert not is_integrable(radial_solution(1.0, 0))
    profile = integrability_profile(f0)
    assert profile == sorted(profile)
    assert profile[-1] - profile[-2] < 1e-2


def test_solution_table_rows():
    rows = solution_table(radial_solution(1.0), omega_grid(5))
    assert len(rows) == 5
    assert set(rows[0]) == {"omega", "value", "residual"}
