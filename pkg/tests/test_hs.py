import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from shadowinv.exceptions import DimMismatchError, NotHermitianError
from shadowinv.hs import eig_max_hermitian, hs_inner, is_psd, pauli_ops, tensor, unvec, vec

from oracles import charpoly_max_root, random_hermitian

I, X, Y, Z = pauli_ops()

finite = st.floats(-10, 10, allow_nan=False)


def complex_matrices(d):
    return st.builds(
        lambda re, im: re + 1j * im, arrays(float, (d, d), elements=finite), arrays(float, (d, d), elements=finite)
    )


def test_vec_examples():
    np.testing.assert_array_equal(vec(I), [1, 0, 0, 1])
    np.testing.assert_array_equal(vec(X), [0, 1, 1, 0])
    assert hs_inner(vec(Z), vec(Z)) == pytest.approx(np.trace(Z @ Z))


def test_vec_is_column_major():
    M = np.arange(4).reshape(2, 2)
    np.testing.assert_array_equal(vec(M), [0, 2, 1, 3])


def test_hs_inner_examples(rng):
    assert hs_inner(vec(X), vec(Y)) == 0
    assert hs_inner(vec(I), vec(I)) == 2
    A, B = random_hermitian(rng), random_hermitian(rng)
    assert hs_inner(vec(A), vec(B)) == pytest.approx(np.trace(A.conj().T @ B), abs=1e-12)


def test_hs_inner_conjugate_linear_first_argument(rng):
    A, B = random_hermitian(rng, 3), random_hermitian(rng, 3)
    c = 0.3 - 1.7j
    assert hs_inner(c * vec(A), vec(B)) == pytest.approx(np.conj(c) * hs_inner(vec(A), vec(B)))


def test_hs_inner_dim_mismatch():
    with pytest.raises(DimMismatchError):
        hs_inner(vec(I), vec(np.eye(3)))


def test_tensor_examples(rng):
    np.testing.assert_array_equal(tensor([I, I]), np.eye(4))
    np.testing.assert_array_equal(tensor([Z, Z]), np.diag([1, -1, -1, 1]))
    A, B = random_hermitian(rng), random_hermitian(rng, 3)
    assert np.trace(tensor([A, B])) == pytest.approx(np.trace(A) * np.trace(B))


def test_tensor_empty():
    with pytest.raises(ValueError):
        tensor([])


def test_eig_max_examples(rng):
    assert eig_max_hermitian(I) == 1
    assert eig_max_hermitian(np.diag([2.0, -1.0])) == pytest.approx(2)
    for _ in range(5):
        H = random_hermitian(rng, 4)
        assert eig_max_hermitian(H) == pytest.approx(charpoly_max_root(H), abs=1e-10)


def test_eig_max_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        eig_max_hermitian(np.array([[0, 1], [0, 0]]))


def test_eig_max_is_rayleigh_maximum(rng):
    H = random_hermitian(rng, 3)
    v = rng.standard_normal((2000, 3)) + 1j * rng.standard_normal((2000, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    rayleigh = np.einsum("pi,ij,pj->p", v.conj(), H, v).real
    assert rayleigh.max() <= eig_max_hermitian(H) + 1e-12


def test_pauli_constants():
    np.testing.assert_array_equal(Z, np.diag([1, -1]))
    np.testing.assert_array_equal(X @ X, I)
    assert np.trace(Y) == 0


@settings(max_examples=50, deadline=None)
@given(complex_matrices(3))
def test_vec_unvec_round_trip(M):
    np.testing.assert_allclose(unvec(vec(M)), M, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(complex_matrices(2))
def test_hs_inner_positive_definite(M):
    v = vec(M)
    if np.any(v != 0):
        assert hs_inner(v, v).real > 0
        assert abs(hs_inner(v, v).imag) < 1e-12


@settings(max_examples=30, deadline=None)
@given(complex_matrices(2), complex_matrices(2), complex_matrices(2))
def test_tensor_associative(A, B, C):
    left = tensor([A, tensor([B, C])])
    right = tensor([tensor([A, B]), C])
    np.testing.assert_allclose(left, right, atol=1e-12 * max(1.0, np.abs(left).max()))


def test_eig_max_multiplicative_on_psd_pairs(rng):
    for _ in range(20):
        G, H = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(2))
        P, Q = G @ G.conj().T, H @ H.conj().T
        assert is_psd(P) and is_psd(Q)
        assert eig_max_hermitian(tensor([P, Q])) == pytest.approx(
            eig_max_hermitian(P) * eig_max_hermitian(Q), rel=1e-10
        )
