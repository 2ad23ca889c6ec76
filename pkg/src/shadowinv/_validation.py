"""Input validation helpers in the spirit of ``sklearn.utils.validation``."""

import numpy as np

from .exceptions import DimMismatchError


def check_effects(X):
    """Coerce ``X`` to a complex ``(n, d, d)`` stack of effects."""
    if hasattr(X, "effects"):
        X = X.effects
    X = np.asarray(X, dtype=complex)
    if X.ndim == 2 and X.shape[0] == X.shape[1]:
        X = X[None]
    if X.ndim != 3 or X.shape[1] != X.shape[2] or X.shape[0] == 0:
        raise DimMismatchError(f"expected an (n, d, d) stack of effects, got shape {X.shape}")
    return X


def check_outcomes(X, n_outcomes):
    """Coerce ``X`` to a 1-d integer array of outcome labels in ``[0, n_outcomes)``."""
    X = np.asarray(X)
    if X.ndim == 2 and 1 in X.shape:
        X = X.ravel()
    if X.ndim != 1:
        raise DimMismatchError(f"expected a 1-d array of outcome labels, got shape {X.shape}")
    if X.size and not np.issubdtype(X.dtype, np.integer):
        if not np.all(np.equal(np.mod(X, 1), 0)):
            raise ValueError("outcome labels must be integers")
        X = X.astype(int)
    if X.size and (X.min() < 0 or X.max() >= n_outcomes):
        raise ValueError(f"outcome labels must lie in [0, {n_outcomes})")
    return X.astype(int, copy=False)


def check_observable(A, dim):
    A = np.asarray(A, dtype=complex)
    if A.shape != (dim, dim):
        raise DimMismatchError(f"observable must have shape {(dim, dim)}, got {A.shape}")
    return A
