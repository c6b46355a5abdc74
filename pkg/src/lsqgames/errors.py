"""Shared exception types."""


class LsqError(Exception):
    """Base class for package errors."""


class InvalidSquareError(LsqError):
    """A grid failed latin-square validation.

    ``violations`` lists (kind, index, symbol) triples where kind is
    "row" or "column" and symbol is the duplicated symbol on that line.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(f"not a latin square: {self.violations}")


class NotOrthogonalError(LsqError):
    """Two squares in a would-be MOLS set are not orthogonal."""

    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__(f"squares {i} and {j} are not orthogonal")


class BudgetExceededError(LsqError):
    """An exact search was refused because it exceeds its state budget.

    Distinct from a negative search result: nothing was explored.
    """

    def __init__(self, what, estimate, budget):
        self.what = what
        self.estimate = estimate
        self.budget = budget
        super().__init__(f"{what}: {estimate} exceeds budget {budget}")
