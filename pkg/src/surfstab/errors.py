"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: InstanceError -> 2, BudgetExceeded -> 3,
InternalError -> 4.
"""


class InstanceError(ValueError):
    """Malformed or contract-violating input."""


class StructureError(InstanceError):
    """Rotation system or walk is structurally invalid."""


class NotParityConsistent(InstanceError):
    """An odd closed walk is 2-sided; ``witness`` holds one such walk."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(Exception):
    """A transversal larger than the allowed budget would be needed."""


class TooLarge(Exception):
    """A construction would exceed its configured size cap."""

    def __init__(self, message, size=None):
        super().__init__(message)
        self.size = size


class InternalError(AssertionError):
    """A runtime self-check failed; indicates a bug, not bad input."""
