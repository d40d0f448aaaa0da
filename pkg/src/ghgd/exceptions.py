"""Exception types raised by ghgd."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class BudgetExceededError(RuntimeError):
    """A computation would exceed its configured state or tuple budget.

    ``reached`` holds the count at which the computation gave up and
    ``budget`` the configured limit.
    """

    def __init__(self, message, reached, budget):
        super().__init__(message)
        self.reached = reached
        self.budget = budget
