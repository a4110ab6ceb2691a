class InvalidInputError(ValueError):
    """Raised when arguments violate an operation's preconditions."""


class IntegrityError(RuntimeError):
    """Raised when two independent computations of the same quantity disagree."""
