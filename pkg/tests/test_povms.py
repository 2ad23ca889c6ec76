import numpy as np
import pytest

from shadowinv.frame import check_duality
from shadowinv.hs import is_psd, pauli_ops
from shadowinv.povms import (
    BUILTIN,
    bloch_projector,
    canonical_estimators,
    clifford_reference_norm,
    equatorial_projector,
    get_povm,
    planar_pauli,
    triangle_states,
)

I, X, Y, Z = pauli_ops()


def test_builtin_counts(named):
    assert named.povm.decomposition.rank == named.expected_D
    assert named.povm.dual.n_free == named.expected_free
    np.testing.assert_allclose(sum(named.povm.effects), I, atol=1e-14)


def test_pauli6_effect_order(p6):
    np.testing.assert_allclose(p6.effects[0], (I + X) / 6)
    np.testing.assert_allclose(p6.effects[3], (I - Y) / 6)
    np.testing.assert_allclose(p6.effects[5], (I - Z) / 6)


def test_planar4_effect_order(p4):
    np.testing.assert_allclose(p4.effects[1], (I - X) / 4)
    np.testing.assert_allclose(p4.effects[2], (I + Y) / 4)


def test_pauli6_null_vectors(p6):
    # (1,1,-1,-1,0,0) and (1,1,0,0,-1,-1) span the kernel
    N = p6.dual.null_basis
    for v in ([1, 1, -1, -1, 0, 0], [1, 1, 0, 0, -1, -1]):
        v = np.array(v, float)
        assert np.linalg.norm(v - N @ (N.T @ v)) < 1e-12


def test_planar4_null_vector(p4):
    N = p4.dual.null_basis[:, 0]
    np.testing.assert_allclose(np.abs(N), 0.5, atol=1e-12)
    assert N[0] * N[2] < 0 and N[0] * N[1] > 0


def test_triangle_states_120_degrees():
    states = triangle_states()
    for j in range(3):
        for k in range(j + 1, 3):
            assert abs(np.vdot(states[j], states[k])) ** 2 == pytest.approx(0.25)


def test_triangle_effects_rank_one(t3):
    for E in t3.effects:
        assert np.linalg.matrix_rank(E, tol=1e-10) == 1
        assert np.trace(E).real == pytest.approx(2 / 3)


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_canonical_estimators_dual(name):
    povm = get_povm(name).povm
    assert check_duality(povm, canonical_estimators(name)) < 1e-10


def test_canonical_pauli6_formula():
    etas = canonical_estimators("pauli6")
    np.testing.assert_allclose(etas[0], (I + 3 * X) / 2, atol=1e-14)
    np.testing.assert_allclose(etas[5], (I - 3 * Z) / 2, atol=1e-14)


def test_canonical_planar4_formula():
    np.testing.assert_allclose(canonical_estimators("planar4")[3], I / 2 - Y, atol=1e-14)


def test_unknown_povm():
    with pytest.raises(KeyError):
        get_povm("tetrahedron")


def test_bloch_projector(rng):
    np.testing.assert_allclose(bloch_projector(0, 0), np.diag([1, 0]), atol=1e-15)
    np.testing.assert_allclose(bloch_projector(np.pi, 0.3), np.diag([0, 1]), atol=1e-15)
    for theta, phi in rng.uniform(0, 2 * np.pi, (10, 2)):
        P = bloch_projector(theta, phi)
        np.testing.assert_allclose(P @ P, P, atol=1e-14)
        assert is_psd(P)


def test_equatorial_projector():
    np.testing.assert_allclose(equatorial_projector(0), (I + X) / 2, atol=1e-15)
    np.testing.assert_allclose(equatorial_projector(np.pi / 2), (I + Y) / 2, atol=1e-15)


def test_planar_pauli():
    np.testing.assert_allclose(planar_pauli(0), X)
    np.testing.assert_allclose(planar_pauli(np.pi / 2), Y, atol=1e-15)
    np.testing.assert_allclose(planar_pauli(0.4) @ planar_pauli(0.4), I, atol=1e-14)


def test_clifford_reference_norm():
    assert clifford_reference_norm(bloch_projector(0.3, 1.0)) == pytest.approx(1)
    assert clifford_reference_norm(X) == pytest.approx(2)
    assert clifford_reference_norm(np.zeros((2, 2))) == 0
