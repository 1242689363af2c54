"""Exception types raised by :mod:`sswalk`."""


class SSWalkError(Exception):
    """Base class for all package errors."""


class NormalizationError(SSWalkError, ValueError):
    """Scalars violate a unit-norm constraint beyond the accepted tolerance."""


class SchemaError(SSWalkError, ValueError):
    """A scenario document does not follow the JSON scenario schema."""


class ZeroPolynomialError(SSWalkError, ValueError):
    """The symbol polynomial vanishes identically."""


class CircleZeroError(SSWalkError, ValueError):
    """A symbol vanishes (numerically) on the unit circle."""


class UnwrapError(SSWalkError, ValueError):
    """Phase sampling is too coarse to unwrap reliably."""


class DegenerateError(SSWalkError, ValueError):
    """Parameters sit on a Fredholm boundary, |p| = |a|."""


class WindowTooSmallError(SSWalkError, ValueError):
    """The finite window cannot hold the requested operator."""


class NonBlockDiagonalError(SSWalkError, ValueError):
    """A matrix expected to be block diagonal has off-diagonal mass."""


class NotPiecewiseConstantError(SSWalkError, ValueError):
    """The coin profile is not piecewise constant."""


class CircleRootError(SSWalkError, ValueError):
    """A region symbol has a root on (or too near) the unit circle."""


class AmbiguousCutError(SSWalkError, RuntimeError):
    """No clean spectral gap around the eigenvalue cutoff."""


class MethodDisagreementError(SSWalkError, RuntimeError):
    """Two index computations that must agree returned different values."""
