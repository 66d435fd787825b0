"""High-precision engine for level-1 Ramanujan-type series for 1/pi."""

from .errors import (
    ConsistencyError,
    DivergentSeriesError,
    DomainError,
    EvaluationError,
    FamilyInapplicableError,
    RangeError,
    RPEError,
)
from .precision import PrecisionContext

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "DivergentSeriesError",
    "DomainError",
    "EvaluationError",
    "FamilyInapplicableError",
    "PrecisionContext",
    "RangeError",
    "RPEError",
    "__version__",
]
