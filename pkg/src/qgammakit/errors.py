"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of the operation."""


class UsageError(ValueError):
    """Structurally invalid call: bad flag combination, index constraint, etc."""


class PreconditionError(ValueError):
    """Input violates a stated precondition (e.g. an unsorted sequence)."""


class ConvergenceError(RuntimeError):
    """A series exceeded its term budget before meeting its tail-bound target."""
