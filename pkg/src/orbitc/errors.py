class OrbitError(Exception):
    """Base class for library errors."""


class DomainError(OrbitError, ValueError):
    """Input outside the domain where an operation is defined."""


class CapacityError(OrbitError, RuntimeError):
    """Requested enumeration or computation exceeds a configured cap."""
