"""Shadow norms, their minimisation over homogeneous parameters, and closed forms.

For an observable ``A`` the single-shot value attached to outcome ``k`` is
``a_k = a_k^(p) + (N h)_k``. The variance operator ``O_A = sum_k |a_k|^2 E_k``
bounds the second moment in every state; its top eigenvalue is the shadow
norm, a convex function of ``(Re h, Im h)``.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .exceptions import DimMismatchError, ObservableOutsideSpanError
from .frame import project_observable
from .hs import as_operator, eig_max_hermitian

TOL_SUBSPACE = 1e-9
# restarts are first run to this simplex diameter; only the best is refined to opts.tol
SCREEN_TOL = 1e-3


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    particular: np.ndarray
    null_basis: np.ndarray
    h: np.ndarray = None

    def __post_init__(self):
        m = self.null_basis.shape[1]
        h = np.zeros(m, dtype=complex) if self.h is None else np.asarray(self.h, dtype=complex).ravel()
        if h.size != m:
            raise DimMismatchError(f"expected {m} free parameters, got {h.size}")
        object.__setattr__(self, "h", h)

    @property
    def homogeneous(self):
        return self.null_basis @ self.h

    @property
    def values(self):
        """The per-outcome coefficients ``a_k``."""
        return self.particular + self.homogeneous

    def with_h(self, h):
        return CoefficientVector(self.particular, self.null_basis, h)


@dataclass
class OptimizerOptions:
    restarts: int = 8
    max_evals: int = 5000
    tol: float = 1e-7
    seed: int = 0


@dataclass
class OptimizationResult:
    h_opt: np.ndarray
    norm_opt: float
    norm_standard: float
    evaluations: int
    converged: bool
    restarts_used: int
    coefficients: CoefficientVector = field(default=None, repr=False)


def particular_coeffs(A, df, tol_subspace=TOL_SUBSPACE):
    """``a_k^(p) = Tr(A eta_k^(p))``; raises if ``A`` is not in the effect span."""
    A = as_operator(A, "observable")
    _, residual = project_observable(A, df.decomposition)
    if residual > tol_subspace:
        raise ObservableOutsideSpanError(residual)
    # Tr(A eta) = sum_ij A_ji eta_ij
    return np.einsum("ji,kij->k", A, np.stack(df.estimators_particular))


def coefficient_vector(A, df, h=None):
    return CoefficientVector(particular_coeffs(A, df), df.null_basis, h)


def coefficients_from_estimators(A, estimators):
    """``a_k = Tr(A eta_k)`` for an explicit list of estimators."""
    A = as_operator(A, "observable")
    return np.einsum("ji,kij->k", A, np.stack(list(estimators)))


def _as_values(cv):
    if isinstance(cv, CoefficientVector):
        return cv.values
    return np.asarray(cv, dtype=complex)


def variance_operator(cv, povm):
    """``O_A = sum_k |a_k|^2 E_k``. Accepts a :class:`CoefficientVector` or raw ``a_k``."""
    a = _as_values(cv)
    if a.size != povm.n:
        raise DimMismatchError(f"{a.size} coefficients for {povm.n} effects")
    w = a.real**2 + a.imag**2
    return np.tensordot(w, povm.stacked, axes=1)


def shadow_norm(cv, povm):
    return eig_max_hermitian(variance_operator(cv, povm))


class _NormObjective:
    """``f(x) = lambda_max(sum_k |a_p + N (x_re + i x_im)|^2 E_k)`` on real coordinates."""

    def __init__(self, particular, null_basis, effects):
        self.particular = particular
        self.null_basis = null_basis
        self.m = null_basis.shape[1]
        self.d = effects.shape[1]
        self.flat = effects.reshape(effects.shape[0], -1)
        if self.d == 2:
            # rows give O_00, O_11, Re O_01, Im O_01 as linear maps of the weights
            self.qubit_map = np.stack(
                [effects[:, 0, 0].real, effects[:, 1, 1].real, effects[:, 0, 1].real, effects[:, 0, 1].imag]
            )
        self.evaluations = 0

    def h_of(self, x):
        return x[: self.m] + 1j * x[self.m :]

    def x_of(self, h):
        h = np.asarray(h, dtype=complex)
        return np.concatenate([h.real, h.imag])

    def __call__(self, x):
        self.evaluations += 1
        a = self.particular + self.null_basis @ (x[: self.m] + 1j * x[self.m :])
        w = a.real**2 + a.imag**2
        if self.d == 2:
            o00, o11, re01, im01 = self.qubit_map @ w
            half = 0.5 * (o00 - o11)
            return 0.5 * (o00 + o11) + math.sqrt(half * half + re01 * re01 + im01 * im01)
        O = (w @ self.flat).reshape(self.d, self.d)
        return float(np.linalg.eigvalsh(O)[-1])


def _random_ball(rng, dim, radius):
    v = rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    return v * radius * rng.random() ** (1.0 / dim)


def _simplex_diameter(simplex):
    diffs = simplex[:, None, :] - simplex[None, :, :]
    return float(np.sqrt((diffs**2).sum(-1)).max())


def _golden_polish(f, x, fx, scale, tol):
    """Coordinate-wise golden-section line searches; accepts only improvements."""
    x = x.copy()
    for i in range(x.size):

        def line(t, i=i):
            y = x.copy()
            y[i] = t
            return f(y)

        res = minimize_scalar(
            line, bracket=(x[i] - scale, x[i] + scale), method="golden", tol=tol
        )
        if res.fun < fx:
            x[i] = res.x
            fx = float(res.fun)
    return x, fx


def optimize_shadow_norm(A, df, povm=None, opts=None, reference_estimators=None):
    """Minimise the shadow norm of ``A`` over the homogeneous parameters.

    Multi-start Nelder-Mead over ``2 (n - D)`` real coordinates (``h = 0``
    first, then ``opts.restarts`` random starts in a ball of radius
    ``4 ||a^(p)||``), followed by a coordinate-wise golden-section polish of
    the best point. ``norm_standard`` is the norm at ``h = 0`` unless
    ``reference_estimators`` are supplied, in which case it is the norm of
    those estimators (which also seed an extra start).
    """
    povm = df.povm if povm is None else povm
    opts = OptimizerOptions() if opts is None else opts
    a_p = particular_coeffs(A, df)
    N = df.null_basis
    m = N.shape[1]

    if reference_estimators is not None:
        a_ref = coefficients_from_estimators(A, reference_estimators)
        norm_standard = shadow_norm(a_ref, povm)
        h_ref = N.conj().T @ (a_ref - a_p)
    else:
        norm_standard = shadow_norm(a_p, povm)
        h_ref = None

    cv0 = CoefficientVector(a_p, N)
    if m == 0:
        value = shadow_norm(cv0, povm)
        return OptimizationResult(
            h_opt=np.zeros(0, dtype=complex),
            norm_opt=value,
            norm_standard=norm_standard,
            evaluations=1,
            converged=True,
            restarts_used=0,
            coefficients=cv0,
        )

    f = _NormObjective(a_p, N, povm.stacked)
    rng = np.random.Generator(np.random.Philox(opts.seed))
    radius = 4.0 * float(np.linalg.norm(a_p)) or 1.0
    starts = [np.zeros(2 * m)]
    if h_ref is not None:
        starts.append(f.x_of(h_ref))
    starts += [_random_ball(rng, 2 * m, radius) for _ in range(opts.restarts)]

    def run(x0, tol, step):
        simplex = x0 + np.vstack([np.zeros(2 * m), np.eye(2 * m) * step])
        res = minimize(
            f,
            x0,
            method="Nelder-Mead",
            options={"xatol": tol / 2, "fatol": np.inf, "maxfev": opts.max_evals, "initial_simplex": simplex},
        )
        return res.x, float(res.fun), _simplex_diameter(res.final_simplex[0]) < tol

    step = max(radius / 4, 0.1)
    screen_tol = max(opts.tol, SCREEN_TOL)
    screened = [run(x0, screen_tol, step) for x0 in starts]
    x = min(screened, key=lambda r: r[1])[0]
    x, fx, converged = run(x, opts.tol, max(100 * screen_tol, 10 * opts.tol))
    x, fx = _golden_polish(f, x, fx, scale=max(opts.tol, 1e-4), tol=1e-10)
    # With real a^(p) (Hermitian A and effects) an imaginary shift only adds
    # |N Im h|^2 to every weight, so drop the residual Im h the search leaves.
    x_real = np.concatenate([x[:m], np.zeros(m)])
    f_real = float(f(x_real))
    if f_real <= fx:
        x, fx = x_real, f_real
    h_opt = f.h_of(x)
    return OptimizationResult(
        h_opt=h_opt,
        norm_opt=fx,
        norm_standard=norm_standard,
        evaluations=f.evaluations,
        converged=converged,
        restarts_used=opts.restarts,
        coefficients=cv0.with_h(h_opt),
    )


def closed_form_pauli6(a, x, y, z):
    """Shadow norm of ``a 1 + x X + y Y + z Z`` under the standard Pauli estimators."""
    r = math.sqrt(x * x + y * y + z * z)
    return a * a + 3 * r * r + 2 * abs(a) * r


def closed_form_planar(a, x, y, p):
    """Published planar-POVM norm ``(a - x)^2 + 2 (x^2 + y^2) + B(p) + sqrt(C(p))``.

    Evaluated literally. It does not agree with the exact eigenvalue (for
    ``A = X`` it dips to 1 while the true optimum is 2), so treat it as a
    record of the published expression, not as a norm.
    """
    p = complex(p)
    pr, pi = p.real, p.imag
    B = (
        2 * (pr**2 + pi**2) * a**2
        + (pr * (8 + pr) + pi**2) * x**2
        + (pr * (pr - 8) + pi**2) * y**2
    ) / 8
    C = (x**2) * (a * (8 + pr * (6 + pr) + pi**2) - 2 * (4 + pr) * x) ** 2 + (
        a * (8 + (pr - 6) * pr + pi**2) + 2 * (pr - 4) * x
    ) ** 2 * y**2
    return (a - x) ** 2 + 2 * (x**2 + y**2) + B + math.sqrt(C)


def closed_form_equatorial(phi, p):
    """Shadow norm of the equatorial projector at angle ``phi`` for parameter ``p``."""
    p = complex(p)
    pr, pi = p.real, p.imag
    B = (4 * pr - 2) * math.cos(phi) + math.cos(2 * phi) + 2 + 2 * pr * (pr - 1)
    C = (
        (4 * pr - 1) * math.cos(phi)
        + 2 * pr * math.cos(2 * phi)
        + math.cos(3 * phi)
        + 2
        + 2 * pr * (pr - 1)
    )
    return 0.5 * (1 + pi**2 + B + math.sqrt(2) * math.sqrt(max(C, 0.0)))


def sample_complexity_bound(norm_sq, epsilon, delta):
    """Scaling surrogate ``norm_sq * epsilon^-2 * ln(1/delta)`` (unit constant)."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if norm_sq < 0:
        raise ValueError("norm_sq must be non-negative")
    return norm_sq * math.log(1.0 / delta) / epsilon**2
