"""POVM frames and their duals.

A POVM ``{E_k}`` spans a subspace ``V_D`` of operator space. Stacking the
vectorised effects as columns gives the frame matrix ``R`` (``d^2 x n``).
Every family of unbiased single-shot estimators ``eta_k`` is a dual frame,
``sum_k |eta_k>><<E_k| = P_{V_D}``, and splits into the minimum-norm
(particular) dual plus a homogeneous part living in ``ker R``.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .exceptions import (
    DimMismatchError,
    NotCompleteError,
    NotPsdError,
    SingularSigmaError,
    SvdFailure,
)
from .hs import TOL_NUM, TOL_PSD, as_operator, is_hermitian, unvec, vec

RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Povm:
    """A validated finite POVM. Build instances with :func:`validate_povm`."""

    dim: int
    effects: tuple

    @property
    def n(self):
        return len(self.effects)

    @cached_property
    def stacked(self):
        """Effects as one ``(n, d, d)`` array."""
        return np.stack(self.effects)

    @cached_property
    def decomposition(self):
        return frame_matrix(self)

    @cached_property
    def dual(self):
        return particular_dual(self.decomposition)


@dataclass(frozen=True, eq=False)
class FrameDecomposition:
    """Frame matrix ``R = U (Sigma | 0) W^dagger`` with effective rank ``D``.

    The first ``rank`` columns of ``U`` are the orthonormal operator basis of
    the effect span used throughout.
    """

    povm: Povm
    R: np.ndarray
    U: np.ndarray
    sigma: np.ndarray
    W: np.ndarray
    rank: int

    @property
    def n_free(self):
        return self.povm.n - self.rank

    @property
    def basis(self):
        """``d^2 x D`` matrix whose columns are ``vec(B_s)``."""
        return self.U[:, : self.rank]

    @cached_property
    def projector(self):
        """Orthogonal projector onto ``V_D`` in HS coordinates."""
        B = self.basis
        return B @ B.conj().T

    def basis_operators(self):
        d = self.povm.dim
        return [unvec(self.U[:, s], d) for s in range(self.rank)]


@dataclass(frozen=True, eq=False)
class DualFrame:
    """Particular dual coefficients and the homogeneous null-space basis.

    ``particular[s, k] = <<B_s|eta_k^(p)>>`` and the columns of
    ``null_basis`` are an orthonormal (real) basis of ``ker R``.
    """

    decomposition: FrameDecomposition
    particular: np.ndarray
    null_basis: np.ndarray
    estimators_particular: tuple = field(repr=False)

    @property
    def povm(self):
        return self.decomposition.povm

    @property
    def n_free(self):
        return self.null_basis.shape[1]


def validate_povm(effects, tol_psd=TOL_PSD, tol_complete=TOL_NUM):
    """Check positivity and completeness of ``effects`` and wrap them in a :class:`Povm`.

    Raises:
        DimMismatchError: empty input or effects of unequal shape.
        NotPsdError: an effect is not Hermitian positive semidefinite.
        NotCompleteError: the effects do not sum to the identity.
    """
    effects = [as_operator(E, "effect") for E in effects]
    if not effects:
        raise DimMismatchError("a POVM needs at least one effect")
    d = effects[0].shape[0]
    for k, E in enumerate(effects):
        if E.shape != (d, d):
            raise DimMismatchError(f"effect {k} has shape {E.shape}, expected {(d, d)}")
    for k, E in enumerate(effects):
        if not is_hermitian(E):
            raise NotPsdError(k, float("nan"))
        min_eig = float(np.linalg.eigvalsh(E).min())
        if min_eig < -tol_psd:
            raise NotPsdError(k, min_eig)
    residual = sum(effects) - np.eye(d)
    if np.max(np.abs(residual)) > tol_complete:
        raise NotCompleteError(float(np.linalg.norm(residual)))
    for E in effects:
        E.setflags(write=False)
    return Povm(dim=d, effects=tuple(effects))


def frame_matrix(povm, rank_tol=RANK_TOL):
    """Stack ``vec(E_k)`` as columns and take the full SVD."""
    R = np.stack([vec(E) for E in povm.effects], axis=1)
    try:
        U, s, Wh = np.linalg.svd(R, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(str(exc)) from exc
    rank = int(np.sum(s > rank_tol * s[0])) if s.size and s[0] > 0 else 0
    return FrameDecomposition(
        povm=povm, R=R, U=U, sigma=s[:rank].copy(), W=Wh.conj().T, rank=rank
    )


def _real_null_basis(R, rank):
    # ker R is closed under conjugation for Hermitian effects, so it has a real basis.
    stacked = np.vstack([R.real, R.imag])
    _, _, vt = np.linalg.svd(stacked, full_matrices=True)
    N = vt[rank:].T
    # fix the sign so the largest-magnitude entry of each column is positive
    for col in N.T:
        i = np.flatnonzero(np.abs(col) > np.abs(col).max() - 1e-12)[0]
        if col[i] < 0:
            col *= -1
    return N.astype(complex)


def particular_dual(dec, rank_tol=RANK_TOL):
    """Minimum-norm dual ``L^(p) = (Sigma^{-1} | 0) W^dagger`` and the null basis."""
    D = dec.rank
    if D == 0 or np.any(dec.sigma < rank_tol * dec.sigma[0]):
        raise SingularSigmaError("retained singular values fall below the rank tolerance")
    L = (dec.W[:, :D].conj().T) / dec.sigma[:, None]
    eta_vecs = dec.basis @ L
    d = dec.povm.dim
    estimators = []
    for k in range(dec.povm.n):
        eta = unvec(eta_vecs[:, k].copy(), d)
        eta.setflags(write=False)
        estimators.append(eta)
    N = _real_null_basis(dec.R, D)
    return DualFrame(
        decomposition=dec,
        particular=L,
        null_basis=N,
        estimators_particular=tuple(estimators),
    )


def homogeneous_direction(observable=None, d=None):
    """Operator ``X`` with ``Tr(A X) = 1`` used to place homogeneous shifts.

    Defaults to ``1/d`` (so ``Tr(1 X) = 1``) when no observable is given.
    """
    if observable is None:
        return np.eye(d, dtype=complex) / d
    A = as_operator(observable)
    norm_sq = np.vdot(A, A).real
    if norm_sq == 0:
        raise ValueError("cannot orient homogeneous shifts along the zero observable")
    return A.conj().T / norm_sq


def assemble_estimators(df, h, observable=None):
    """Estimators ``eta_k(h) = eta_k^(p) + (N h)_k X``.

    ``X`` is chosen so that the single-shot coefficients of ``observable``
    become ``Tr(A eta_k(h)) = a_k^(p) + (N h)_k``. Since ``sum_k (N h)_k E_k = 0``
    the family stays unbiased for every ``h``.
    """
    h = np.asarray(h, dtype=complex).ravel()
    if h.size != df.n_free:
        raise DimMismatchError(f"expected {df.n_free} free parameters, got {h.size}")
    if h.size == 0:
        return list(df.estimators_particular)
    X = homogeneous_direction(observable, df.povm.dim)
    shift = df.null_basis @ h
    return [eta + c * X for eta, c in zip(df.estimators_particular, shift)]


def check_duality(povm, estimators):
    """Frobenius residual of ``sum_k |eta_k>><<E_k| - P_{V_D}``."""
    estimators = list(estimators)
    if len(estimators) != povm.n:
        raise DimMismatchError(f"{len(estimators)} estimators for {povm.n} effects")
    H = np.stack([vec(eta) for eta in estimators], axis=1)
    R = povm.decomposition.R
    return float(np.linalg.norm(H @ R.conj().T - povm.decomposition.projector))


def project_observable(A, dec):
    """Coordinates of ``A`` in the span basis and its HS distance to ``V_D``."""
    A = as_operator(A, "observable")
    if A.shape[0] != dec.povm.dim:
        raise DimMismatchError(f"observable has dim {A.shape[0]}, POVM has dim {dec.povm.dim}")
    v = vec(A)
    coords = dec.basis.conj().T @ v
    residual = float(np.linalg.norm(v - dec.basis @ coords))
    return coords, residual
