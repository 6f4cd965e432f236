"""Exception types shared across the package."""


class SchattenKitError(Exception):
    """Base class for all library-specific errors."""


class NonHermitianError(SchattenKitError):
    """Input exceeds the Hermiticity tolerance."""


class ConvergenceFailureError(SchattenKitError):
    """An eigensolver or SVD failed to converge."""


class SingularPowerError(SchattenKitError):
    """A power that is unbounded near zero was requested of a near-singular matrix."""


class ZeroInputError(SchattenKitError):
    """An operation that needs a nonzero matrix received (numerically) zero."""


class OutsideStripError(SchattenKitError):
    """Evaluation point lies outside the closed strip 0 <= Re z <= 1."""


class LogOfZeroError(SchattenKitError):
    """A boundary norm was too close to zero for its logarithm to be meaningful."""


class InvalidExponentError(SchattenKitError):
    """A divergence or grid exponent lies outside its admissible range."""


class IncompatibleStateError(SchattenKitError):
    """A state violates the structural requirements of a subalgebra."""


class FaithfulnessLostError(SchattenKitError):
    """A restricted density fell below the faithfulness floor."""


class ConfigError(SchattenKitError):
    """A suite configuration field is invalid."""


class ParseError(SchattenKitError):
    """A matrix or report file could not be parsed."""


class DimensionMismatchError(SchattenKitError):
    """Matrix dimensions are inconsistent with the declared ones."""
