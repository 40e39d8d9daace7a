"""Exception types shared across the package."""


class PentaError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PentaError, ValueError):
    """An argument lies outside the domain of the requested function."""


class TruncationError(PentaError):
    """A truncated series is too short for the requested operation."""


class ResourceError(PentaError):
    """A configured resource cap (chain length, precision) was exceeded."""


class PreconditionError(PentaError, ValueError):
    """A geometric precondition (point on hypersurface, point on PenTa) failed."""


class IndeterminacyError(PentaError):
    """The residual point map is undefined because the line lies in X."""


class VerificationFailure(PentaError):
    """An exact identity that must hold was found to be violated."""
