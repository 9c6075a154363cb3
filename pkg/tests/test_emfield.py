import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st

from spflag.core.emfield import (
    QPolyField,
    apply_pstar,
    decompose,
    decomposition_residual,
    field_ring,
    parse_field_spec,
    parse_polynomial,
    quaternion_product_identity,
    random_field,
)
from spflag.core.errors import FieldSpecError
from spflag.core.quaternion import I, J, Quaternion

components = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, components, components, components, components)


def test_zero_field():
    assert apply_pstar(QPolyField.zero()).is_zero()


def test_pstar_of_x1_i():
    image = apply_pstar(parse_field_spec(["A1=x1"]))
    assert image.as_strings() == {"A0": "-1", "A1": "0", "A2": "0", "A3": "0"}


def test_pstar_of_x3_e():
    image = apply_pstar(parse_field_spec(["A0=x3"]))
    assert image.components[3] == 1
    assert all(c == 0 for c in image.components[:3])


def test_constant_field_has_trivial_decomposition():
    parts = decompose(parse_field_spec(["A0=3", "A2=-7"]))
    assert all(p == 0 for p in (parts.scalar,) + parts.E + parts.B)


def test_rotation_field_is_magnetic():
    parts = decompose(parse_field_spec(["A1=-x2", "A2=x1"]))
    assert parts.B == (0, 0, 2)
    assert all(e == 0 for e in parts.E)
    assert parts.as_dict()["B"] == ["0", "0", "2"]


def test_time_dependent_potential_is_electric():
    _, x = field_ring()
    parts = decompose(parse_field_spec(["A0=x0*x3"]))
    assert parts.E == (0, 0, -x[0])
    assert parts.scalar == x[3]


def test_decomposition_identity_on_random_fields(rng):
    for _ in range(20):
        psi = random_field(rng)
        assert decomposition_residual(psi, decompose(psi)).is_zero()


def test_pstar_is_linear(rng):
    a, b = random_field(rng), random_field(rng)
    combined = apply_pstar(a.scale(2) + b)
    assert (combined - apply_pstar(a).scale(2) - apply_pstar(b)).is_zero()


def test_parse_polynomial_accepts_rationals():
    _, x = field_ring()
    assert 2 * parse_polynomial("x0**2/2 - 3*x1") == x[0] ** 2 - 6 * x[1]


@pytest.mark.parametrize("spec", [["A4=x1"], ["x1"], ["A1=x1", "A1=x2"], ["A1=y"], ["A1=sin(x1)"], ["A1=x1 +"]])
def test_bad_field_specs(spec):
    with pytest.raises(FieldSpecError):
        parse_field_spec(spec)


def test_product_identity_on_basis():
    assert quaternion_product_identity(I, J) == 0.0


@seed(21)
@given(quaternions, quaternions)
def test_product_identity(v, w):
    scale = max(1.0, np.sqrt(v.norm_sq() * w.norm_sq()))
    assert quaternion_product_identity(v, w) <= 1e-13 * scale
