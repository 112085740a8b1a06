"""Exception and warning types raised across the package."""


class NonHermitianError(ValueError):
    """Input matrix is not Hermitian within tolerance."""


class NoConvergenceError(ArithmeticError):
    """An iterative linear-algebra routine failed to converge."""


class ZeroVectorError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


class InvariantViolation(ValueError):
    """A density operator or channel failed its structural checks."""


class OutOfRangeError(ValueError):
    pass


class NegativeTimeError(ValueError):
    pass


class PoleError(ValueError):
    """Gamma function evaluated at a non-positive integer."""


class SeriesDivergenceError(ArithmeticError):
    """Hypergeometric series did not reach tolerance within ``max_terms``."""


class NonPositiveInformationError(ValueError):
    pass


class WeightsNotNormalizedError(ValueError):
    pass


class PrecisionLossWarning(RuntimeWarning):
    """Series summation suffered cancellation beyond the requested tolerance."""


class NearBranchPointWarning(RuntimeWarning):
    """Ohmic exponent close to, but not exactly, 1."""
