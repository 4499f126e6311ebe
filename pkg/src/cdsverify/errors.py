"""Exception types shared across the package."""


class UsageError(ValueError):
    """Bad input: mismatched variables, malformed literals, violated preconditions."""


class BudgetError(RuntimeError):
    """A computation would exceed its configured work budget."""

    def __init__(self, message, *, bound=None, requested=None):
        super().__init__(message)
        self.bound = bound
        self.requested = requested
