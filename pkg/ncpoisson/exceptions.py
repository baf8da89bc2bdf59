"""
Exceptions raised by ncpoisson
"""

from typing import Optional


class NCPoissonError(Exception):
    """Base class of every error raised by the package."""


class DimensionError(NCPoissonError):
    """Raised when matrix shapes are incompatible with the operation."""


class ZeroPolynomialError(NCPoissonError):
    """Raised when an operation needs a nonzero polynomial."""


class AlgebraMismatchError(NCPoissonError):
    """Raised when operands live in different algebras."""


class AlgebraDefinitionError(NCPoissonError):
    """Raised when an algebra descriptor violates antisymmetry or Jacobi."""


class OutOfSliceError(NCPoissonError):
    """Raised when an element does not fit the requested filtration slice."""


class NotAHomomorphismError(NCPoissonError):
    """Raised when generator images do not satisfy the source relations."""


class ZeroElementError(NCPoissonError):
    """Raised when an operation is undefined on the zero element."""


class HypothesisError(NCPoissonError):
    """Raised when the premises of a theorem rule are not established."""


class LocalizationError(NCPoissonError):
    """Raised for invalid operations in a localized algebra."""


class ParseError(NCPoissonError):
    """Raised for malformed expressions; carries a 1-based position."""

    def __init__(self, message: str, line: int = 1, column: int = 1, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{message} (line {line}, column {column})")


class GeneratorSetError(NCPoissonError):
    """Raised when a generator list is empty."""
