"""Exception types shared across the package.

The CLI maps these onto exit codes: invalid input and format problems exit
with 1, capacity/budget problems with 2.
"""


class GraphFormatError(ValueError):
    """A graph file violates the text format contract."""


class CapacityError(RuntimeError):
    """An operation would exceed a configured size budget (memory or subsets)."""


class BudgetExceededError(RuntimeError):
    """A solver ran out of its node or time budget without an exact answer."""
