"""Product observables measured with local POVMs.

The variance operator of ``A_1 x ... x A_N`` under a product POVM with
product coefficients is the tensor product of the local variance operators,
so shadow norms multiply and each site can be optimised on its own.
"""

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .exceptions import DimMismatchError, DimTooLargeError
from .frame import validate_povm
from .hs import as_operator, tensor
from .variance import (
    CoefficientVector,
    OptimizerOptions,
    coefficient_vector,
    coefficients_from_estimators,
    optimize_shadow_norm,
    particular_coeffs,
    shadow_norm,
    _NormObjective,
)

MAX_DIRECT_SITES = 3


@dataclass(frozen=True, eq=False)
class Site:
    povm: object
    observable: np.ndarray
    reference_estimators: tuple = None


@dataclass(frozen=True, eq=False)
class ProductSpec:
    sites: tuple

    def __post_init__(self):
        sites = tuple(s if isinstance(s, Site) else Site(*s) for s in self.sites)
        if not sites:
            raise ValueError("a product needs at least one site")
        for s in sites:
            # raises ObservableOutsideSpanError on bad sites
            particular_coeffs(s.observable, s.povm.dual)
        object.__setattr__(self, "sites", sites)

    @property
    def N(self):
        return len(self.sites)


def site_norms(spec, optimized=True, opts=None):
    """Per-site shadow norms, optimised or at the baseline estimators."""
    norms = []
    for site in spec.sites:
        if optimized:
            res = optimize_shadow_norm(
                site.observable, site.povm.dual, site.povm, opts, site.reference_estimators
            )
            norms.append(res.norm_opt)
        elif site.reference_estimators is not None:
            a = coefficients_from_estimators(site.observable, site.reference_estimators)
            norms.append(shadow_norm(a, site.povm))
        else:
            norms.append(shadow_norm(coefficient_vector(site.observable, site.povm.dual), site.povm))
    return norms


def product_norm(spec, optimized=True, opts=None):
    return float(np.prod(site_norms(spec, optimized, opts)))


def tensor_povm(povms):
    """Product POVM with effects ordered lexicographically in the site outcomes."""
    effects = [tensor(combo) for combo in itertools.product(*(p.effects for p in povms))]
    return validate_povm(effects, tol_complete=1e-10)


def joint_coefficients(site_coeffs):
    """Kronecker product of per-site coefficient vectors (same ordering as :func:`tensor_povm`)."""
    out = np.ones(1, dtype=complex)
    for a in site_coeffs:
        out = np.kron(out, a.values if isinstance(a, CoefficientVector) else np.asarray(a))
    return out


def product_norm_direct(spec, h_per_site=None):
    """Shadow norm of the tensor observable evaluated on the dense composite system."""
    if spec.N > MAX_DIRECT_SITES:
        raise DimTooLargeError(f"direct evaluation is limited to {MAX_DIRECT_SITES} sites")
    if h_per_site is None:
        h_per_site = [None] * spec.N
    if len(h_per_site) != spec.N:
        raise DimMismatchError(f"{len(h_per_site)} parameter vectors for {spec.N} sites")
    coeffs = [coefficient_vector(s.observable, s.povm.dual, h) for s, h in zip(spec.sites, h_per_site)]
    joint = tensor_povm([s.povm for s in spec.sites])
    return shadow_norm(joint_coefficients(coeffs), joint)


@dataclass
class JointComparison:
    product_of_local: float
    joint: float
    evaluations: int

    @property
    def gap(self):
        return self.product_of_local - self.joint


def joint_optimize(spec, opts=None):
    """Optimise over the full null space of the tensor POVM.

    The search starts at the tensor product of the local optima, so the
    joint value can only match or undercut the product of local optima.
    """
    opts = OptimizerOptions() if opts is None else opts
    if spec.N > MAX_DIRECT_SITES:
        raise DimTooLargeError(f"joint optimisation is limited to {MAX_DIRECT_SITES} sites")
    local = [optimize_shadow_norm(s.observable, s.povm.dual, s.povm, opts) for s in spec.sites]
    joint = tensor_povm([s.povm for s in spec.sites])
    A = tensor([s.observable for s in spec.sites])
    df = joint.dual
    a_p = particular_coeffs(A, df)
    a_local = joint_coefficients([r.coefficients for r in local])
    N = df.null_basis
    m = N.shape[1]
    product_of_local = float(np.prod([r.norm_opt for r in local]))
    if m == 0:
        return JointComparison(product_of_local, shadow_norm(a_p, joint), 0)
    f = _NormObjective(a_p, N, joint.stacked)
    h0 = N.conj().T @ (a_local - a_p)
    x0 = f.x_of(h0)
    simplex = x0 + np.vstack([np.zeros(2 * m), 0.05 * np.eye(2 * m)])
    res = minimize(
        f,
        x0,
        method="Nelder-Mead",
        options={"xatol": opts.tol, "fatol": 1e-12, "maxfev": opts.max_evals, "initial_simplex": simplex},
    )
    return JointComparison(product_of_local, min(float(res.fun), f(x0)), f.evaluations)


def scaling_curve(norm_site_a, norm_site_b, n_max):
    """Rows ``(N, a^N, b^N, a^N / b^N)`` for ``N = 1..n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rows = []
    for N in range(1, n_max + 1):
        pa, pb = norm_site_a**N, norm_site_b**N
        rows.append({"N": N, "norm_a": pa, "norm_b": pb, "ratio": pa / pb})
    return rows


def random_site_observable(rng, povm):
    """Random Hermitian observable projected into the span of ``povm``."""
    d = povm.dim
    G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    H = (G + G.conj().T) / 2
    dec = povm.decomposition
    v = dec.projector @ H.reshape(-1, order="F")
    A = v.reshape(d, d, order="F")
    return as_operator((A + A.conj().T) / 2)
