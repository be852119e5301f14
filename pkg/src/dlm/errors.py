"""Exception types shared across the toolkit."""


class StructureError(Exception):
    """A model, action model or document violates a structural invariant
    (dangling references, postcondition discipline, malformed file)."""


class BudgetExceededError(Exception):
    """An enumeration outgrew the configured budget."""
