"""Exception types shared across the package."""


class PcsError(Exception):
    """Base class for all package errors."""


class ParseError(PcsError, ValueError):
    """Malformed sequence, SDS, or fact file."""


class VerificationError(PcsError):
    """A family or construction failed its correlation / difference check."""


class InfeasibleParameters(PcsError, ValueError):
    """A parameter set fails one of the necessary feasibility identities."""


class BudgetExceeded(PcsError):
    """An exhaustive search would exceed its evaluation budget."""

    def __init__(self, estimate: int, budget: int, what: str = "search"):
        self.estimate = estimate
        self.budget = budget
        super().__init__(f"{what}: estimated {estimate} evaluations exceeds budget {budget}")


class CatalogContradiction(PcsError):
    """Closure derived existence for a cell recorded as nonexistent."""
