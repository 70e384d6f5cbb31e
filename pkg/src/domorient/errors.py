"""Exception types shared across the package.

The CLI maps these onto distinct exit codes; library users can catch them
individually.
"""


class GraphInputError(Exception):
    """Malformed input document (parse failure, bad labels)."""


class PreconditionError(Exception):
    """Caller violated an operation's stated precondition."""


class InvariantBreachError(Exception):
    """An internal guarantee failed; carries diagnostic context."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class BudgetExceededError(Exception):
    """Exact computation refused because the instance exceeds its budget."""
