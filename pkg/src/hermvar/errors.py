"""Exception types shared across the package."""


class NotPrimePower(ValueError):
    """The requested field order is not a prime power."""


class ExceedsCap(ValueError):
    """The requested field order is above the configured cap."""


class WrongDimension(ValueError):
    """A subspace or vector has the wrong dimension for the operation."""


class NotOnVariety(ValueError):
    """The point does not lie on the Hermitian variety."""


class Degenerate(ValueError):
    """The operation requires a non-degenerate (full-rank) Hermitian form."""


class OutOfRange(ValueError):
    """A parameter is outside the range where the quantity is defined."""


class BudgetExceeded(RuntimeError):
    """The enumeration would exceed the configured evaluation budget."""

    def __init__(self, needed, allowed, what="point evaluations"):
        self.needed = needed
        self.allowed = allowed
        super().__init__(f"would need {needed:,} {what}, budget allows {allowed:,}")


class DuplicateHyperplanes(ValueError):
    """An arrangement was given repeated hyperplanes."""


class InsufficientPencilMembers(RuntimeError):
    """No scanned pencil contains three hyperplanes of the required tangency."""


class PreconditionViolated(ValueError):
    """An input violates a documented precondition of the check."""
