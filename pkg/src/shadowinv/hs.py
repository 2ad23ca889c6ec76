"""Hilbert-Schmidt operator algebra on dense complex matrices.

Operators are plain ``numpy`` arrays of shape ``(d, d)``. Vectorisation is
column-major (``vec(X)[i + d*j] == X[i, j]``), so ``vec`` of the matrix unit
``|i><j|`` is the canonical basis vector ``i + d*j``.
"""

from functools import reduce

import numpy as np

from .exceptions import DimMismatchError, NotHermitianError

TOL_NUM = 1e-12
TOL_HERM = 1e-10
TOL_PSD = 1e-9
TOL_EIG = 1e-10

_I2 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def as_operator(X, name="operator"):
    """Return ``X`` as a square complex array, raising on bad shapes."""
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] == 0:
        raise DimMismatchError(f"{name} must be a non-empty square matrix, got shape {X.shape}")
    return X


def is_hermitian(X, tol=TOL_HERM):
    X = np.asarray(X)
    return bool(np.max(np.abs(X - X.conj().T), initial=0.0) <= tol)


def is_psd(X, tol=TOL_PSD):
    if not is_hermitian(X):
        return False
    return bool(np.linalg.eigvalsh(np.asarray(X)).min() >= -tol)


def vec(X):
    """Column-major vectorisation of an operator into HS coordinates."""
    X = as_operator(X)
    return X.reshape(-1, order="F")


def unvec(x, d=None):
    """Inverse of :func:`vec`."""
    x = np.asarray(x, dtype=complex)
    if d is None:
        d = int(round(np.sqrt(x.size)))
    if x.ndim != 1 or d * d != x.size:
        raise DimMismatchError(f"vector of length {x.size} is not a vectorised {d}x{d} operator")
    return x.reshape(d, d, order="F")


def hs_inner(x, y):
    """Hilbert-Schmidt inner product, conjugate-linear in ``x``.

    For ``x = vec(X)`` and ``y = vec(Y)`` this equals ``Tr(X^dagger Y)``.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise DimMismatchError(f"HS vectors have different shapes {x.shape} and {y.shape}")
    return complex(np.vdot(x.ravel(), y.ravel()))


def tensor(factors):
    """Kronecker product of a non-empty sequence of operators, in order."""
    factors = list(factors)
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    return reduce(np.kron, (as_operator(f) for f in factors))


def eig_max_hermitian(X):
    """Largest eigenvalue of a Hermitian operator."""
    X = as_operator(X)
    if not is_hermitian(X):
        raise NotHermitianError("eig_max_hermitian() requires a Hermitian operator")
    return float(np.linalg.eigvalsh(X)[-1])


def pauli_ops():
    """The four single-qubit constants ``(I, X, Y, Z)`` as fresh arrays."""
    return _I2.copy(), _SX.copy(), _SY.copy(), _SZ.copy()
