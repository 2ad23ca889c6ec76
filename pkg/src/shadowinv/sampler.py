"""Monte Carlo measurement simulation.

Histograms are drawn with numpy's counter-based Philox bit generator, so a
given ``(seed, shots, probabilities)`` reproduces the same counts on every
platform. Anything that accepts a histogram also accepts an exact probability
vector, which turns sampling statements into deterministic ones.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DimMismatchError, InvalidStateError, ProbabilityLeakError
from .hs import TOL_PSD, as_operator, is_psd
from .variance import CoefficientVector

TOL_TRACE = 1e-9
TOL_LEAK = 1e-9


@dataclass(frozen=True, eq=False)
class SamplingRun:
    seed: int
    shots: int
    counts: np.ndarray
    mean_estimate: complex
    second_moment: float
    shadow_mean: np.ndarray


def rng_for(seed):
    return np.random.Generator(np.random.Philox(seed))


def outcome_probabilities(rho, povm):
    """``p_k = Tr(rho E_k)``, clipped to ``[0, 1]`` and renormalised."""
    rho = as_operator(rho, "state")
    if rho.shape[0] != povm.dim:
        raise DimMismatchError(f"state has dim {rho.shape[0]}, POVM has dim {povm.dim}")
    if not is_psd(rho, TOL_PSD):
        raise InvalidStateError("state is not Hermitian positive semidefinite")
    if abs(np.trace(rho) - 1) > TOL_TRACE:
        raise InvalidStateError(f"state has trace {np.trace(rho).real:.12g}")
    p = np.einsum("ij,kji->k", rho, povm.stacked).real
    p = np.clip(p, 0.0, 1.0)
    deviation = p.sum() - 1
    if abs(deviation) > TOL_LEAK:
        raise ProbabilityLeakError(deviation)
    return p / p.sum()


def sample_outcomes(probs, shots, seed):
    """Multinomial histogram of ``shots`` draws."""
    probs = np.asarray(probs, dtype=float)
    return rng_for(seed).multinomial(shots, probs / probs.sum())


def sample_sequence(probs, shots, seed):
    """Individual outcome indices, for single-shot processing."""
    probs = np.asarray(probs, dtype=float)
    return rng_for(seed).choice(probs.size, size=shots, p=probs / probs.sum())


def _frequencies(hist, n):
    hist = np.asarray(hist, dtype=float)
    if hist.shape != (n,):
        raise DimMismatchError(f"histogram of shape {hist.shape} for {n} outcomes")
    total = hist.sum()
    if total <= 0:
        raise ValueError("empty histogram")
    return hist / total


def estimate_observable(hist, cv):
    """Empirical mean of ``a_k`` and of ``|a_k|^2`` over a histogram."""
    a = cv.values if isinstance(cv, CoefficientVector) else np.asarray(cv, dtype=complex)
    freq = _frequencies(hist, a.size)
    mean = complex(freq @ a)
    second = float(freq @ (a.real**2 + a.imag**2))
    return mean, second


def shadow_average(hist, estimators):
    """Frequency-weighted average of the single-shot estimators."""
    estimators = np.stack([as_operator(e) for e in estimators])
    freq = _frequencies(hist, estimators.shape[0])
    return np.tensordot(freq, estimators, axes=1)


def exact_moments(rho, povm, cv):
    """Exact mean, second moment and variance of the single-shot value."""
    p = outcome_probabilities(rho, povm)
    mean, second = estimate_observable(p, cv)
    return mean, second, second - abs(mean) ** 2


def fourth_moment(probs, cv):
    a = cv.values if isinstance(cv, CoefficientVector) else np.asarray(cv, dtype=complex)
    w = a.real**2 + a.imag**2
    return float(np.asarray(probs) @ (w * w))


def simulate(rho, povm, cv, estimators, shots, seed):
    """Sample ``shots`` outcomes from ``rho`` and reduce them to a :class:`SamplingRun`."""
    counts = sample_outcomes(outcome_probabilities(rho, povm), shots, seed)
    mean, second = estimate_observable(counts, cv)
    return SamplingRun(
        seed=seed,
        shots=shots,
        counts=counts,
        mean_estimate=mean,
        second_moment=second,
        shadow_mean=shadow_average(counts, estimators),
    )
