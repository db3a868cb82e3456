class QuadrotorError(Exception):
    """Base class for every error raised by the toolkit."""


class DimensionError(QuadrotorError, ValueError):
    """Matrix operands have incompatible shapes."""


class UnsupportedDegreeError(QuadrotorError, ValueError):
    """Polynomial degree outside the range the root finder handles."""


class NonFiniteError(QuadrotorError, ArithmeticError):
    """A derivative or state component became NaN or infinite."""


class GimbalProximityError(QuadrotorError, ArithmeticError):
    """Pitch is too close to +/-90 degrees for the Euler-rate kinematics."""


class ParameterError(QuadrotorError, ValueError):
    """A configuration or physical parameter violates its invariants."""


class GainFileError(QuadrotorError, OSError):
    """A gain file is missing, unreadable or malformed."""
