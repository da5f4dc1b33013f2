"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when user-supplied data fails validation."""


class MoveError(InputError):
    """Raised when a cobordism move is illegal in the current state."""


class BudgetExceeded(RuntimeError):
    """Raised when a search exceeds its configured node budget."""
