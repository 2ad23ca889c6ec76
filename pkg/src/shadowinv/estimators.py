"""scikit-learn style front end.

``ShadowInversion`` learns the dual frame of a POVM and maps measured outcome
labels to single-shot estimators. ``ShadowNormOptimizer`` additionally tunes
the homogeneous parameters for one target observable and maps outcome labels
to the optimised single-shot values.

    >>> from shadowinv.povms import planar4, equatorial_projector
    >>> opt = ShadowNormOptimizer(observable=equatorial_projector(0.0))
    >>> opt.fit(planar4().povm).norm_           # doctest: +ELLIPSIS
    1.0...
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_effects, check_observable, check_outcomes
from .frame import RANK_TOL, assemble_estimators, frame_matrix, particular_dual, validate_povm
from .variance import OptimizerOptions, optimize_shadow_norm


class ShadowInversion(TransformerMixin, BaseEstimator):
    """Minimum-norm dual frame of a POVM.

    Parameters
    ----------
    rank_tol : float
        Relative cutoff on singular values of the frame matrix.

    Attributes
    ----------
    povm_ : Povm
    dual_ : DualFrame
    rank_ : int
        Dimension of the effect span.
    n_free_ : int
        Number of homogeneous (free) parameters, ``n - rank_``.
    estimators_ : ndarray of shape (n, d, d)
    """

    def __init__(self, rank_tol=RANK_TOL):
        self.rank_tol = rank_tol

    def fit(self, X, y=None):
        """Fit on a stack of effects ``X`` of shape ``(n, d, d)``."""
        self.povm_ = validate_povm(list(check_effects(X)))
        dec = frame_matrix(self.povm_, self.rank_tol)
        self.dual_ = particular_dual(dec, self.rank_tol)
        self.rank_ = dec.rank
        self.n_free_ = self.dual_.n_free
        self.estimators_ = np.stack(self.dual_.estimators_particular)
        return self

    def transform(self, X):
        """Single-shot estimator for each outcome label in ``X``."""
        check_is_fitted(self, "estimators_")
        return self.estimators_[check_outcomes(X, self.povm_.n)]

    def shadow(self, X):
        """Classical shadow: the average estimator over the outcome labels ``X``."""
        return self.transform(X).mean(axis=0)


class ShadowNormOptimizer(BaseEstimator):
    """Estimator family with homogeneous parameters tuned for ``observable``.

    Parameters
    ----------
    observable : array of shape (d, d)
        Target observable; must lie in the span of the fitted effects.
    restarts, max_evals, tol, seed
        Forwarded to :class:`~shadowinv.variance.OptimizerOptions`.

    Attributes
    ----------
    h_ : ndarray of complex
        Optimal free parameters in the dual's null basis.
    norm_ : float
        Optimised shadow norm.
    norm_standard_ : float
        Shadow norm of the minimum-norm dual (``h = 0``).
    coefficients_ : ndarray of shape (n,)
        Optimised single-shot values ``a_k``.
    estimators_ : ndarray of shape (n, d, d)
        Estimators whose coefficients for ``observable`` are ``coefficients_``.
    """

    def __init__(self, observable=None, restarts=8, max_evals=5000, tol=1e-7, seed=0):
        self.observable = observable
        self.restarts = restarts
        self.max_evals = max_evals
        self.tol = tol
        self.seed = seed

    def fit(self, X, y=None):
        inversion = ShadowInversion().fit(X)
        if self.observable is None:
            raise ValueError("ShadowNormOptimizer needs an observable")
        A = check_observable(self.observable, inversion.povm_.dim)
        opts = OptimizerOptions(self.restarts, self.max_evals, self.tol, self.seed)
        res = optimize_shadow_norm(A, inversion.dual_, inversion.povm_, opts)
        self.povm_ = inversion.povm_
        self.dual_ = inversion.dual_
        self.result_ = res
        self.h_ = res.h_opt
        self.norm_ = res.norm_opt
        self.norm_standard_ = res.norm_standard
        self.coefficients_ = res.coefficients.values
        self.estimators_ = np.stack(assemble_estimators(self.dual_, self.h_, observable=A))
        return self

    def predict(self, X):
        """Optimised single-shot value for each outcome label."""
        check_is_fitted(self, "coefficients_")
        return self.coefficients_[check_outcomes(X, self.povm_.n)]

    def estimate(self, X):
        """Sample-mean estimate of ``Tr(A rho)`` from outcome labels."""
        return self.predict(X).mean()

    def transform(self, X):
        check_is_fitted(self, "estimators_")
        return self.estimators_[check_outcomes(X, self.povm_.n)]
