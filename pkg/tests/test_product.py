import numpy as np
import pytest

from shadowinv.exceptions import DimMismatchError, DimTooLargeError, ObservableOutsideSpanError
from shadowinv.hs import pauli_ops, tensor
from shadowinv.povms import bloch_projector, canonical_estimators, equatorial_projector, planar_pauli
from shadowinv.product import (
    ProductSpec,
    Site,
    joint_coefficients,
    joint_optimize,
    product_norm,
    product_norm_direct,
    random_site_observable,
    scaling_curve,
    site_norms,
    tensor_povm,
)
from shadowinv.variance import coefficient_vector, optimize_shadow_norm, shadow_norm

I, X, Y, Z = pauli_ops()


def test_single_site_equals_local(p6):
    A = bloch_projector(0.7, 0.2)
    spec = ProductSpec([Site(p6, A)])
    assert product_norm(spec) == pytest.approx(optimize_shadow_norm(A, p6.dual).norm_opt)


def test_baseline_is_power(p6):
    canon = tuple(canonical_estimators("pauli6"))
    spec = ProductSpec([Site(p6, bloch_projector(t, 0.1), canon) for t in (0.2, 1.0, 2.0)])
    assert product_norm(spec, optimized=False) == pytest.approx(1.5**3, abs=1e-10)


def test_identity_sites_are_neutral(p6):
    spec = ProductSpec([Site(p6, I), Site(p6, X)])
    assert product_norm(spec, optimized=False) == pytest.approx(3)


def test_tuple_sites_accepted(p4):
    spec = ProductSpec([(p4, X)])
    assert spec.N == 1 and isinstance(spec.sites[0], Site)


def test_outside_span_rejected(p4):
    with pytest.raises(ObservableOutsideSpanError):
        ProductSpec([Site(p4, Z)])


def test_empty_rejected():
    with pytest.raises(ValueError):
        ProductSpec([])


def test_tensor_povm_ordering(p4, t3):
    joint = tensor_povm([p4, t3])
    assert joint.n == 12 and joint.dim == 4
    np.testing.assert_allclose(joint.effects[5], tensor([p4.effects[1], t3.effects[2]]))


def test_tensor_coefficient_identity(p6, p4, rng):
    A, B = random_site_observable(rng, p6), random_site_observable(rng, p4)
    ca = coefficient_vector(A, p6.dual, rng.standard_normal(2))
    cb = coefficient_vector(B, p4.dual, rng.standard_normal(1))
    joint = tensor_povm([p6, p4])
    a = joint_coefficients([ca, cb])
    recon = sum(ak * E for ak, E in zip(a, joint.effects))
    np.testing.assert_allclose(recon, tensor([A, B]), atol=1e-10)


@pytest.mark.parametrize("n_sites", [2, 3])
def test_multiplicativity(n_sites, p6, p4, t3, rng):
    povms = [p6, p4, t3][:n_sites]
    sites = [Site(P, random_site_observable(rng, P)) for P in povms]
    spec = ProductSpec(sites)
    hs = [rng.standard_normal(P.dual.n_free) + 1j * rng.standard_normal(P.dual.n_free) for P in povms]
    local = np.prod([shadow_norm(coefficient_vector(s.observable, s.povm.dual, h), s.povm) for s, h in zip(sites, hs)])
    assert product_norm_direct(spec, hs) == pytest.approx(local, rel=1e-9)


def test_direct_size_limit(p4):
    spec = ProductSpec([Site(p4, X)] * 4)
    with pytest.raises(DimTooLargeError):
        product_norm_direct(spec)
    with pytest.raises(DimMismatchError):
        product_norm_direct(ProductSpec([Site(p4, X)] * 2), [None])


def test_joint_not_worse_than_local(p4):
    spec = ProductSpec([Site(p4, equatorial_projector(0.4)), Site(p4, planar_pauli(1.0))])
    cmp = joint_optimize(spec)
    assert cmp.joint <= cmp.product_of_local + 1e-6
    assert cmp.gap >= -1e-6
    assert cmp.product_of_local == pytest.approx(product_norm(spec), abs=1e-6)


def test_joint_triangle_has_no_freedom(t3):
    cmp = joint_optimize(ProductSpec([Site(t3, X), Site(t3, Y)]))
    assert cmp.joint == pytest.approx(9) and cmp.product_of_local == pytest.approx(9)


def test_site_norms_baseline_uses_particular(p4):
    # a = (1/2, 1/2, 3/2, -1/2) for (1 + Y)/2, so O = (3 + 2Y)/4
    spec = ProductSpec([Site(p4, X), Site(p4, equatorial_projector(np.pi / 2))])
    np.testing.assert_allclose(site_norms(spec, optimized=False), [2, 1.25], atol=1e-12)


def test_scaling_curve_values():
    rows = scaling_curve(1.5, 1.15, 20)
    assert len(rows) == 20
    assert rows[9]["norm_a"] == pytest.approx(57.665, abs=1e-3)
    assert rows[9]["norm_b"] == pytest.approx(4.0456, abs=1e-4)
    assert rows[9]["ratio"] == pytest.approx((1.5 / 1.15) ** 10)
    assert rows[0] == {"N": 1, "norm_a": 1.5, "norm_b": 1.15, "ratio": pytest.approx(1.5 / 1.15)}
    with pytest.raises(ValueError):
        scaling_curve(1.5, 1.15, 0)


def test_random_site_observable_in_span(p4, rng):
    A = random_site_observable(rng, p4)
    np.testing.assert_allclose(A, A.conj().T)
    assert abs(np.trace(A @ Z)) < 1e-12
