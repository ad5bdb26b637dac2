"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Inputs violate an operation's preconditions."""


class ResourceError(RuntimeError):
    """An exact search ran out of its node budget before proving a value."""


class ConstructionUndefinedError(ValueError):
    """A construction cannot be carried out for the given inner structure."""


class InvariantViolation(AssertionError):
    """A computed result broke a property that must hold mathematically."""


class FormatError(ValueError):
    """Malformed family or multigraph file."""
