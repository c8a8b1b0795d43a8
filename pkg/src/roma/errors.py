"""Exception types shared across the package."""


class RomaError(Exception):
    """Base class for all errors raised by this package."""


class ZeroColumnError(RomaError):
    """A data column has (numerically) zero norm, so it cannot be normalized."""

    def __init__(self, index: int):
        self.index = int(index)
        super().__init__(f"column {index} has effectively zero norm")


class DimensionMismatchError(RomaError):
    """Two operands live in different ambient dimensions."""


class EmptyInlierSetError(RomaError):
    """Subspace recovery was asked to run on zero columns."""


class DegenerateCdfError(RomaError):
    """A cdf value underflowed to zero where a positive value is required."""


class MatrixParseError(RomaError):
    """An input file could not be parsed into a numeric matrix."""
