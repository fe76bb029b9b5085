"""Exception types raised by the library."""


class MalformedInputError(ValueError):
    """Input object or file violates a structural contract (shape, trace, positivity)."""


class DomainError(ValueError):
    """Scalar argument outside the mathematical domain of an operation."""


class CapabilityError(RuntimeError):
    """Request exceeds a guard limit on deliberately bounded algorithms."""
