"""Exception types shared across the library."""


class DomainError(ValueError):
    """A parameter lies outside the mathematical domain of an operation."""


class CapacityError(RuntimeError):
    """An exhaustive computation was requested above its hard size cap."""


class GroundMismatchError(ValueError):
    """Two objects live on incompatible ground sets (different n, p, or doubling)."""


class LatticeMismatchError(ValueError):
    """Two distributions live on incompatible lattices."""
