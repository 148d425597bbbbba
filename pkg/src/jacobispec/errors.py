"""Exception hierarchy shared by all modules."""


class JacobiSpecError(Exception):
    """Base class for library errors."""


class NonConvergenceError(JacobiSpecError, ArithmeticError):
    """A truncated series or sequence tail failed to converge."""


class PoleError(JacobiSpecError, ZeroDivisionError):
    """An argument hit a pole of the function being evaluated."""


class LengthExceededError(JacobiSpecError, ValueError):
    """Input too long for a combinatorial routine."""


class DegenerateError(JacobiSpecError, ArithmeticError):
    """A computed vector is numerically null or not finite."""


class ParameterError(JacobiSpecError, ValueError):
    """Model or q parameters violate their invariants."""
