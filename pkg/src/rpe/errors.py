"""Exception hierarchy shared by all modules."""


class RPEError(Exception):
    """Base class for every error raised by the package."""


class DomainError(RPEError, ValueError):
    """Argument outside the domain of an operation."""


class RangeError(RPEError, ArithmeticError):
    """Result outside the representable exponent range."""


class FamilyInapplicableError(DomainError):
    """Series family formulas give |z| >= 1 for the requested index."""


class DivergentSeriesError(DomainError):
    """Series argument lies outside the disc of convergence."""


class EvaluationError(RPEError, ArithmeticError):
    """Expression evaluation hit a (numerically) zero divisor."""


class ConsistencyError(RPEError):
    """An internal cross-check failed, e.g. a non-integral class number."""
