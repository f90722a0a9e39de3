class BudgetExceeded(RuntimeError):
    """A configured work or state ceiling was hit before the computation finished."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed, e.g. a fitted recurrence mispredicts held-out terms."""
