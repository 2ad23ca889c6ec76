"""Unbiased dual-frame estimators for finite POVMs and the minimisation of their shadow norms."""

from .estimators import ShadowInversion, ShadowNormOptimizer
from .exceptions import (
    NotCompleteError,
    NotPsdError,
    ObservableOutsideSpanError,
    ShadowInvError,
    ValidationError,
)
from .frame import (
    DualFrame,
    FrameDecomposition,
    Povm,
    assemble_estimators,
    check_duality,
    frame_matrix,
    particular_dual,
    project_observable,
    validate_povm,
)
from .hs import eig_max_hermitian, hs_inner, pauli_ops, tensor, unvec, vec
from .povms import (
    bloch_projector,
    canonical_estimators,
    clifford_reference_norm,
    equatorial_projector,
    get_povm,
    planar4,
    pauli6,
    triangle3,
)
from .variance import (
    CoefficientVector,
    OptimizationResult,
    OptimizerOptions,
    coefficient_vector,
    optimize_shadow_norm,
    particular_coeffs,
    sample_complexity_bound,
    shadow_norm,
    variance_operator,
)

__version__ = "0.1.0"

__all__ = [
    "ShadowInversion",
    "ShadowNormOptimizer",
    "NotCompleteError",
    "NotPsdError",
    "ObservableOutsideSpanError",
    "ShadowInvError",
    "ValidationError",
    "DualFrame",
    "FrameDecomposition",
    "Povm",
    "assemble_estimators",
    "check_duality",
    "frame_matrix",
    "particular_dual",
    "project_observable",
    "validate_povm",
    "eig_max_hermitian",
    "hs_inner",
    "pauli_ops",
    "tensor",
    "unvec",
    "vec",
    "bloch_projector",
    "canonical_estimators",
    "clifford_reference_norm",
    "equatorial_projector",
    "get_povm",
    "planar4",
    "pauli6",
    "triangle3",
    "CoefficientVector",
    "OptimizationResult",
    "OptimizerOptions",
    "coefficient_vector",
    "optimize_shadow_norm",
    "particular_coeffs",
    "sample_complexity_bound",
    "shadow_norm",
    "variance_operator",
]
