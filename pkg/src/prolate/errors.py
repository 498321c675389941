"""Exception types raised by the package."""


class ProlateError(Exception):
    """Base class for package errors."""


class DomainError(ProlateError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(ProlateError):
    """An iteration did not converge within its budget."""


class BracketError(ProlateError):
    """Sturm counts at the bracket ends are inconsistent with the target."""


class InfeasibleError(ProlateError):
    """The requested quantity cannot be computed reliably in double precision."""


class ParameterWindowError(ProlateError, ValueError):
    """Parameters fall outside the window in which a bound or rule is valid."""


class TaylorDriftError(ProlateError):
    """Taylor stepping disagrees with a direct evaluation beyond tolerance."""
