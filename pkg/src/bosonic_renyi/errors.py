"""Exception hierarchy.

Every error is a ``ValueError`` subclass so callers that only care about
bad input can catch one type.
"""


class GaussianError(ValueError):
    """Base class for all package errors."""


class DimensionMismatch(GaussianError):
    pass


class NotSymmetric(GaussianError):
    pass


class UncertaintyViolated(GaussianError):
    pass


class PairingFailed(GaussianError):
    """Eigenvalues of the symplectic-form product do not come in +-i*nu pairs."""


class BadOrder(GaussianError):
    pass


class NegativeMeanPhotons(GaussianError):
    pass


class SchemeUnsupported(GaussianError):
    pass


class KindMismatch(GaussianError):
    pass


class ModeMismatch(GaussianError):
    pass


class BadTau(GaussianError):
    pass


class BadGain(GaussianError):
    pass


class NegativeArgument(GaussianError):
    pass


class NoConvergence(GaussianError):
    pass


class BadTriple(GaussianError):
    pass


class ConstraintViolated(GaussianError):
    pass


class BadDomain(GaussianError):
    pass


class BadParams(GaussianError):
    pass


class ConfigInvalid(GaussianError):
    pass
