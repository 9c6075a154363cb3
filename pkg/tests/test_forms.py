import numpy as np
import pytest

from spflag.core.coset import GrassmannPoint, coset_element
from spflag.core.errors import DependentDirections, DimensionMismatch, ShapeMismatch
from spflag.core.forms import (
    QOneForm,
    basis_one_form,
    connection_blocks,
    curvature_blocks,
    dY_wedge,
    duality_signs,
    hodge_star_matrix,
    maurer_cartan_residual,
    quaternion_differential,
    wedge,
)
from spflag.core.quaternion import I, J, K
from spflag.core.quatmat import QuatMatrix, exp, random_quatmatrix, random_skew


def test_wedge_of_basis_forms():
    form = wedge(basis_one_form(0, I), basis_one_form(1, J))
    assert form.coefficient(0, 1).entry(0, 0) == K
    assert form.coefficient(1, 0).entry(0, 0) == -K
    assert form.coefficient(0, 0).max_abs() == 0.0


def test_wedge_respects_quaternion_order():
    first = wedge(basis_one_form(0, I), basis_one_form(1, J))
    second = wedge(basis_one_form(1, J), basis_one_form(0, I))
    np.testing.assert_array_equal(first.coeffs, second.coeffs)


def test_wedge_needs_same_base():
    with pytest.raises(DimensionMismatch):
        wedge(basis_one_form(0, I, dim=4), basis_one_form(0, I, dim=3))


def test_quaternion_differential_evaluates_to_vector():
    value = quaternion_differential().evaluate(np.array([1.0, 2.0, 3.0, 4.0]))
    np.testing.assert_array_equal(value.data[0, 0], [1.0, 2.0, 3.0, 4.0])


def test_dY_wedge_components():
    sd, asd = dY_wedge()
    np.testing.assert_allclose(sd.component(1), [-2.0, 0.0, 0.0, 0.0, 0.0, -2.0])
    np.testing.assert_allclose(asd.component(1), [2.0, 0.0, 0.0, 0.0, 0.0, -2.0])
    np.testing.assert_allclose(sd.component(0), 0.0)
    np.testing.assert_allclose(asd.component(0), 0.0)


def test_duality_of_dY_wedges():
    sd, asd = dY_wedge()
    assert duality_signs(sd) == {1: 1, 2: 1, 3: 1}
    assert duality_signs(asd) == {1: -1, 2: -1, 3: -1}


def test_hodge_star_is_involution():
    star = hodge_star_matrix()
    np.testing.assert_array_equal(star @ star, np.eye(6))


def test_component_needs_scalar_coefficients(rng):
    big = wedge(
        QOneForm(rng.standard_normal((4, 2, 1, 4))),
        QOneForm(rng.standard_normal((4, 1, 2, 4))),
    )
    with pytest.raises(ShapeMismatch):
        big.component(1)


def test_two_form_evaluation_is_antisymmetric(rng):
    sd, _ = dY_wedge()
    v1, v2 = rng.standard_normal(4), rng.standard_normal(4)
    assert sd.evaluate(v1, v2).allclose(-sd.evaluate(v2, v1), atol=1e-14)


def test_connection_of_one_parameter_subgroup(rng):
    h = random_skew(rng, 3)
    blocks = connection_blocks(lambda t: exp(h * t), 0.4, 1)
    assert blocks.full().allclose(h, atol=1e-7)
    assert blocks.skew_residual() < 1e-7
    assert blocks.off_diagonal_residual() < 1e-7


def test_maurer_cartan_equation(rng):
    xi0, d1, d2 = (random_quatmatrix(rng, 2, 1, 0.5) for _ in range(3))
    residual = maurer_cartan_residual(lambda s, t: coset_element(xi0 + d1 * s + d2 * t), 0.1, -0.2, 2)
    assert set(residual) == {"11", "12", "21", "22"}
    assert max(residual.values()) < 1e-4


def test_curvature_is_antisymmetric(rng):
    Y = GrassmannPoint(random_quatmatrix(rng, 2, 1, 0.5))
    dY1, dY2 = random_quatmatrix(rng, 2, 1), random_quatmatrix(rng, 2, 1)
    forward = curvature_blocks(Y, dY1, dY2)
    backward = curvature_blocks(Y, dY2, dY1)
    assert forward.omega11.allclose(-backward.omega11, atol=1e-12)
    assert forward.omega22.allclose(-backward.omega22, atol=1e-12)


def test_curvature_magnitudes_for_scalar_points(rng):
    Y = GrassmannPoint(random_quatmatrix(rng, 1, 1, 0.5))
    pair = curvature_blocks(Y, random_quatmatrix(rng, 1, 1), random_quatmatrix(rng, 1, 1))
    assert pair.r11.norm_sq() == pytest.approx(pair.r22.norm_sq(), rel=1e-10)


def test_curvature_rejects_dependent_directions(rng):
    Y = GrassmannPoint(QuatMatrix.zeros(2, 1))
    dY = random_quatmatrix(rng, 2, 1)
    with pytest.raises(DependentDirections):
        curvature_blocks(Y, dY, dY * 2.0)
    relaxed = curvature_blocks(Y, dY, dY * 2.0, strict=False)
    assert relaxed.omega11.max_abs() < 1e-12


def test_relaxed_curvature_warns_on_dependent_directions(rng, log_messages):
    Y = GrassmannPoint(QuatMatrix.zeros(2, 1))
    dY = random_quatmatrix(rng, 2, 1)
    curvature_blocks(Y, dY, dY * -3.0, strict=False)
    assert any("линейно зависимы" in m for m in log_messages)


def test_independent_directions_do_not_warn(rng, log_messages):
    Y = GrassmannPoint(random_quatmatrix(rng, 2, 1, 0.3))
    curvature_blocks(Y, random_quatmatrix(rng, 2, 1), random_quatmatrix(rng, 2, 1), strict=False)
    assert not log_messages
