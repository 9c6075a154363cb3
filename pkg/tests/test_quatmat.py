import numpy as np
import scipy.linalg
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from spflag.core.errors import (
    DomainError,
    MalformedM2C,
    NonSquare,
    NotGroupElement,
    NotHyperHermitian,
    SingularDenominator,
    SingularInvSqrt,
)
from spflag.core.quaternion import I, J, K, Quaternion
from spflag.core.quatmat import (
    QuatMatrix,
    adjoint,
    as_group_element,
    block_diag,
    det_hyperhermitian,
    eigvals_hyperhermitian,
    exp,
    func_hermitian,
    group_residual,
    inverse,
    is_skew_adjoint,
    random_group_element,
    random_hermitian_psd,
    random_quatmatrix,
    random_skew,
    sp2nc_algebra_blocks,
    sp2nc_residuals,
    to_sp2nc,
)

sizes = st.integers(min_value=1, max_value=4)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_matmul_keeps_factor_order():
    a = QuatMatrix.scalar(I)
    b = QuatMatrix.scalar(J)
    assert (a @ b).entry(0, 0) == K
    assert (b @ a).entry(0, 0) == -K


@seed(11)
@given(sizes, sizes, sizes, seeds)
def test_embedding_is_multiplicative(r, m, c, s):
    rng = np.random.default_rng(s)
    a = random_quatmatrix(rng, r, m)
    b = random_quatmatrix(rng, m, c)
    np.testing.assert_allclose((a @ b).embed(), a.embed() @ b.embed(), atol=1e-12)


@seed(12)
@given(sizes, sizes, seeds)
def test_embedding_of_adjoint(r, c, s):
    a = random_quatmatrix(np.random.default_rng(s), r, c)
    np.testing.assert_allclose(adjoint(a).embed(), a.embed().conj().T, atol=1e-14)


def test_embedding_round_trip(rng):
    a = random_quatmatrix(rng, 3, 2)
    assert QuatMatrix.from_embedding(a.embed()).allclose(a, atol=1e-14)


def test_from_embedding_rejects_broken_blocks():
    with pytest.raises(MalformedM2C):
        QuatMatrix.from_embedding(np.diag([1.0, 2.0]).astype(complex))


@settings(max_examples=30)
@seed(13)
@given(sizes, seeds, st.sampled_from([0.1, 1.0, 10.0]))
def test_exponential_of_skew_is_group_element(n, s, t):
    gen = random_skew(np.random.default_rng(s), n)
    assert is_skew_adjoint(gen)
    assert group_residual(exp(gen * t)) < 1e-10


def test_exp_zero_is_identity():
    assert exp(QuatMatrix.zeros(3, 3)).allclose(QuatMatrix.identity(3), atol=0.0)


@pytest.mark.parametrize("scale", [0.1, 1.0, 3.0])
def test_exp_matches_scipy(rng, scale):
    m = random_quatmatrix(rng, 3, 3, scale)
    expected = scipy.linalg.expm(m.embed())
    assert np.allclose(exp(m).embed(), expected, rtol=1e-10, atol=1e-10 * np.abs(expected).max())


def test_exp_rejects_rectangular():
    with pytest.raises(NonSquare):
        exp(QuatMatrix.zeros(2, 3))


def test_as_group_element_rejects_non_unitary():
    with pytest.raises(NotGroupElement):
        as_group_element(QuatMatrix.identity(2) * 2.0)


def test_trace_and_complex_trace(rng):
    a = random_quatmatrix(rng, 3, 3)
    assert a.complex_trace() == pytest.approx(np.trace(a.embed()).real, abs=1e-12)
    assert a.trace().w == pytest.approx(a.complex_trace() / 2, abs=1e-12)


def test_hyperhermitian_eigenvalues_are_paired(rng):
    p = random_hermitian_psd(rng, 3)
    values = eigvals_hyperhermitian(p)
    assert values.shape == (3,)
    assert np.all(values >= -1e-12)
    assert det_hyperhermitian(p) == pytest.approx(np.prod(values))


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(NotHyperHermitian):
        eigvals_hyperhermitian(QuatMatrix.scalar(I))


def test_func_hermitian_sqrt_squares_back(rng):
    p = random_hermitian_psd(rng, 3)
    root = func_hermitian(p, "sqrt")
    assert (root @ root).allclose(p, atol=1e-9)


def test_func_hermitian_identities(rng):
    p = random_hermitian_psd(rng, 2)
    s = func_hermitian(p, "sin_sqrt")
    c = func_hermitian(p, "cos_sqrt")
    assert (s @ s + c @ c).allclose(QuatMatrix.identity(2), atol=1e-10)


def test_func_hermitian_invsqrt_of_identity():
    eye = QuatMatrix.identity(2)
    assert func_hermitian(eye * 4.0, "invsqrt").allclose(eye * 0.5, atol=1e-12)


def test_func_hermitian_singular_invsqrt():
    with pytest.raises(SingularInvSqrt):
        func_hermitian(QuatMatrix.zeros(2, 2), "invsqrt")


def test_func_hermitian_unknown_tag():
    with pytest.raises(DomainError):
        func_hermitian(QuatMatrix.identity(1), "tan")


def test_inverse(rng):
    a = random_quatmatrix(rng, 3, 3) + QuatMatrix.identity(3) * 5.0
    assert (a @ inverse(a)).allclose(QuatMatrix.identity(3), atol=1e-12)


def test_inverse_of_singular_matrix():
    with pytest.raises(SingularDenominator):
        inverse(QuatMatrix.zeros(2, 2))


def test_block_diag_shape(rng):
    m = block_diag(random_quatmatrix(rng, 1, 1), random_quatmatrix(rng, 2, 3))
    assert m.shape == (3, 4)
    assert m.block(0, 1, 1, 4).max_abs() == 0.0


def test_sp2nc_representation(rng):
    g = random_group_element(rng, 3)
    symplectic, unitary = sp2nc_residuals(to_sp2nc(g))
    assert symplectic < 1e-10
    assert unitary < 1e-10


def test_sp2nc_algebra_blocks(rng):
    residuals = sp2nc_algebra_blocks(random_skew(rng, 3))
    assert set(residuals) == {"a_skew", "b_symmetric", "lower_left", "lower_right"}
    assert max(residuals.values()) < 1e-12


def test_scale_by_quaternion_sides():
    m = QuatMatrix.scalar(I)
    assert m.left_scale(J).entry(0, 0) == -K
    assert m.right_scale(J).entry(0, 0) == K
    assert m.left_scale(Quaternion(2.0)).entry(0, 0) == I * 2.0
