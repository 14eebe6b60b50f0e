"""Exception types shared across the package."""


class SteinerError(Exception):
    """Base class for domain errors."""


class ParseError(SteinerError):
    """Malformed input text (designs, groups, permutations, instances)."""


class BudgetExceeded(SteinerError):
    """A configured cap (group order, subset space, search nodes) was hit."""
