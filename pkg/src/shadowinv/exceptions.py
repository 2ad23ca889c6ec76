"""Exception hierarchy.

Validation problems derive from :class:`ValidationError` (CLI exit code 1),
numerical breakdowns from :class:`NumericalError` (CLI exit code 2).
"""


class ShadowInvError(Exception):
    """Base class for all errors raised by shadowinv."""


class ValidationError(ShadowInvError, ValueError):
    reason = "invalid"


class NumericalError(ShadowInvError, ArithmeticError):
    reason = "numerical_failure"


class DimMismatchError(ValidationError):
    reason = "dim_mismatch"


class NotHermitianError(ValidationError):
    reason = "not_hermitian"


class NotPsdError(ValidationError):
    reason = "not_psd"

    def __init__(self, k, min_eig):
        self.k = k
        self.min_eig = min_eig
        super().__init__(f"effect {k} is not PSD (min eigenvalue {min_eig:.3e})")


class NotCompleteError(ValidationError):
    reason = "not_complete"

    def __init__(self, residual_norm):
        self.residual_norm = residual_norm
        super().__init__(f"effects do not sum to identity (residual {residual_norm:.3e})")


class ObservableOutsideSpanError(ValidationError):
    reason = "observable_outside_span"

    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"observable lies outside the effect span (residual {residual:.3e})")


class InvalidStateError(ValidationError):
    reason = "invalid_state"


class ProbabilityLeakError(ValidationError):
    reason = "probability_leak"

    def __init__(self, deviation):
        self.deviation = deviation
        super().__init__(f"outcome probabilities sum to 1{deviation:+.3e}")


class DimTooLargeError(ValidationError):
    reason = "dim_too_large"


class SvdFailure(NumericalError):
    reason = "svd_failure"


class SingularSigmaError(NumericalError):
    reason = "singular_sigma"
