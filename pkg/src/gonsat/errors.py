"""Exception types shared across the package."""


class GonsatError(Exception):
    """Base class for all package-specific errors."""


class CollinearInput(GonsatError):
    """Three input points are collinear (general-position violation)."""


class PreconditionViolated(GonsatError):
    """An operation's documented precondition does not hold."""


class BoundExceeded(GonsatError):
    """A configured size bound (e.g. enumeration limit) was exceeded."""


class InvalidAssignment(GonsatError):
    """An orientation assignment fails the realizability axioms."""


class AxiomViolation(GonsatError):
    """A decoded solver model violates the orientation axioms."""


class WindowTooLong(GonsatError):
    """Requested cube window does not fit the point range."""


class UnsupportedVariant(GonsatError):
    """Encoding variant/target combination is not defined."""


class IoFailure(GonsatError):
    """Reading or writing an external file/stream failed."""


class ResourceLimit(GonsatError):
    """Solver gave up due to a configured budget (not an UNSAT result)."""


class SolverCrashed(GonsatError):
    """External solver exited with a nonstandard code."""


class CheckerRejected(GonsatError):
    """External proof checker did not report a verified proof."""
