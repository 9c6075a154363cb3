import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from spflag.core.errors import MalformedM2C
from spflag.core.quaternion import (
    BASIS,
    E,
    I,
    J,
    JMAT,
    K,
    Quaternion,
    conj,
    from_m2c,
    j_conjugate,
    mul,
    norm_sq,
    qmul_array,
    random_unit_array,
    to_m2c,
)

components = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, components, components, components, components)


def test_basis_products():
    assert mul(I, J) == K
    assert mul(J, K) == I
    assert mul(K, I) == J
    assert mul(J, I) == -K
    assert mul(I, I) == -E


def test_basis_order():
    assert BASIS == (E, I, J, K)


def test_m2c_image_of_basis():
    np.testing.assert_array_equal(to_m2c(E), np.eye(2))
    np.testing.assert_array_equal(to_m2c(J), np.array([[0, 1j], [1j, 0]]))
    np.testing.assert_array_equal(to_m2c(I), np.array([[0, 1], [-1, 0]]))
    np.testing.assert_array_equal(JMAT, to_m2c(I))


@seed(1)
@given(quaternions, quaternions)
def test_m2c_is_homomorphism(a, b):
    lhs = to_m2c(mul(a, b))
    rhs = to_m2c(a) @ to_m2c(b)
    scale = max(1.0, np.sqrt(norm_sq(a) * norm_sq(b)))
    assert np.abs(lhs - rhs).max() <= 1e-12 * scale


@seed(2)
@given(quaternions)
def test_round_trip(q):
    back = from_m2c(to_m2c(q))
    np.testing.assert_allclose(back.as_array(), q.as_array(), atol=1e-12)


@seed(3)
@given(quaternions, quaternions)
def test_conjugation_reverses_products(a, b):
    lhs = conj(mul(a, b)).as_array()
    rhs = mul(conj(b), conj(a)).as_array()
    scale = max(1.0, np.sqrt(norm_sq(a) * norm_sq(b)))
    assert np.abs(lhs - rhs).max() <= 1e-12 * scale


@seed(4)
@given(quaternions)
def test_j_conjugate_is_complex_conjugate(q):
    m = to_m2c(q)
    np.testing.assert_allclose(j_conjugate(m), m.conj(), atol=1e-12)


@settings(max_examples=50)
@seed(5)
@given(quaternions, quaternions)
def test_norm_is_multiplicative(a, b):
    expected = norm_sq(a) * norm_sq(b)
    assert norm_sq(mul(a, b)) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_from_m2c_rejects_malformed():
    with pytest.raises(MalformedM2C):
        from_m2c(np.array([[1, 0], [0, 2]], dtype=complex))


def test_from_m2c_rejects_wrong_shape():
    with pytest.raises(MalformedM2C):
        from_m2c(np.eye(3))


def test_vectorised_product_matches_scalar(rng):
    a = rng.standard_normal((5, 4))
    b = rng.standard_normal((5, 4))
    batch = qmul_array(a, b)
    for row in range(5):
        single = mul(Quaternion.from_array(a[row]), Quaternion.from_array(b[row]))
        np.testing.assert_allclose(batch[row], single.as_array(), atol=1e-14)


def test_random_units_lie_on_sphere(rng):
    units = random_unit_array(rng, (100,))
    np.testing.assert_allclose(np.linalg.norm(units, axis=-1), 1.0, atol=1e-14)
