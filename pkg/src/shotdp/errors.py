"""Exception types raised by input validation across the package.

Every class subclasses :class:`ShotDPError` (itself a ``ValueError``), so
callers can catch the package's rejections generically while tests and the
command line can name the precise condition.
"""


class ShotDPError(ValueError):
    """Base class for every validation failure raised by this package."""


class NotHermitianError(ShotDPError):
    """Matrix is not Hermitian within tolerance."""


class NotPSDError(ShotDPError):
    """Matrix has an eigenvalue below the positive-semidefinite tolerance."""


class TraceNotOneError(ShotDPError):
    """Matrix trace differs from 1 beyond tolerance."""


class ColumnsNotOrthonormalError(ShotDPError):
    """Supplied column block is not an orthonormal family."""


class DimMismatchError(ShotDPError):
    """Operands act on spaces of different dimension."""


class AnchorCoincidesError(ShotDPError):
    """Anchor state is indistinguishable from the reference state."""


class DistanceTooLargeError(ShotDPError):
    """Requested trace distance exceeds what the anchor direction allows."""


class OutOfRangeError(ShotDPError):
    """Scalar parameter lies outside its admissible interval."""


class DegenerateMuError(ShotDPError):
    """Outcome probability of 0 or 1 leaves no randomness to work with."""


class ZeroNoiseError(ShotDPError):
    """Depolarizing probability 0 makes the noisy-regime constants diverge."""


class DeltaOutOfRangeError(ShotDPError):
    """Target delta is outside the invertible range of the tail formula."""


class UnattainableError(ShotDPError):
    """No shot count satisfies the requested budget."""


class IncompletePVMError(ShotDPError):
    """Projector family does not sum to the identity."""


class TooManyOutcomesError(ShotDPError):
    """Outcome count exceeds the exhaustive-subset audit limit."""


class PreconditionViolatedError(ShotDPError):
    """Inputs violate a documented precondition of the operation."""


class BadConfigError(ShotDPError):
    """Run configuration is malformed or inconsistent."""
