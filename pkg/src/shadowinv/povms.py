"""Built-in single-qubit POVMs, their textbook estimators, and target observables.

Effect orderings are fixed: ``pauli6`` is (x+, x-, y+, y-, z+, z-), ``planar4``
is (x+, x-, y+, y-) and ``triangle3`` is k = 0, 1, 2. Coefficient vectors and
CSV columns follow these orders.
"""

from dataclasses import dataclass

import numpy as np

from .frame import validate_povm
from .hs import as_operator, pauli_ops

I2, SX, SY, SZ = pauli_ops()


@dataclass(frozen=True, eq=False)
class NamedPovm:
    name: str
    povm: object
    expected_D: int
    expected_free: int


def _pm_effects(paulis, weight):
    return [(I2 + s * P) * weight for P in paulis for s in (1, -1)]


def pauli6():
    """Normalised projectors ``(1 +- sigma)/6`` on the three Pauli bases."""
    return NamedPovm("pauli6", validate_povm(_pm_effects((SX, SY, SZ), 1 / 6)), 4, 2)


def planar4():
    """``(1 +- sigma)/4`` for X and Y only; spans the equatorial operator plane."""
    return NamedPovm("planar4", validate_povm(_pm_effects((SX, SY), 1 / 4)), 3, 1)


def triangle_states():
    return [np.array([1, np.exp(2j * np.pi * k / 3)]) / np.sqrt(2) for k in range(3)]


def triangle3():
    """Three equatorial rank-one effects ``(2/3)|psi_k><psi_k|`` at 120 degrees."""
    effects = [2 / 3 * np.outer(psi, psi.conj()) for psi in triangle_states()]
    return NamedPovm("triangle3", validate_povm(effects), 3, 0)


BUILTIN = {"pauli6": pauli6, "planar4": planar4, "triangle3": triangle3}


def get_povm(name):
    try:
        return BUILTIN[name]()
    except KeyError:
        raise KeyError(f"unknown POVM {name!r}; choose from {sorted(BUILTIN)}") from None


def canonical_estimators(name):
    """The standard closed-form estimators for a built-in POVM."""
    named = get_povm(name)
    effects = named.povm.effects
    if name == "pauli6":
        return [3 * (3 * E - np.trace(E) * I2) for E in effects]
    if name == "planar4":
        return [4 * E - np.trace(E) * I2 for E in effects]
    return [3 * E - 0.75 * np.trace(E) * I2 for E in effects]


def bloch_projector(theta, phi):
    """Pure-state projector with Bloch angles ``(theta, phi)``."""
    n = (np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta))
    return (I2 + n[0] * SX + n[1] * SY + n[2] * SZ) / 2


def equatorial_projector(phi):
    return bloch_projector(np.pi / 2, phi)


def planar_pauli(phi):
    """``cos(phi) X + sin(phi) Y``."""
    return np.cos(phi) * SX + np.sin(phi) * SY


def clifford_reference_norm(A):
    """``Tr(A^2)``, the shadow norm that global Clifford shadows would achieve.

    A comparison constant only; no Clifford measurement is simulated.
    """
    A = as_operator(A)
    return float(np.trace(A @ A).real)
