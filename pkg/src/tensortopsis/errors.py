"""Exception types raised across the package."""


class TensorTopsisError(Exception):
    """Base class for all errors raised by tensortopsis."""


class MissingCellError(TensorTopsisError):
    """A required (alternative, criterion, time) cell is absent."""


class DuplicateCellError(TensorTopsisError):
    """The same (alternative, criterion, time) cell was given twice."""


class NonFiniteValueError(TensorTopsisError):
    """An evaluation is NaN or infinite."""


class UnknownDirectionError(TensorTopsisError):
    """No benefit/cost direction was supplied for a criterion."""


class NegativeWeightError(TensorTopsisError):
    """A weight is below zero."""


class WeightSumError(TensorTopsisError):
    """A weight vector does not sum to one."""


class LengthMismatchError(TensorTopsisError):
    """A weight vector length disagrees with the data dimensions."""


class ShapeMismatchError(TensorTopsisError):
    """Array shapes disagree with the expected tensor layout."""


class ZeroMeanError(TensorTopsisError):
    """Coefficient of variation is undefined for a zero-mean series."""


class ZeroColumnError(TensorTopsisError):
    """A normalization column is identically zero."""


class NegativeRemainderError(TensorTopsisError):
    """Remainder weight sampling kept producing negative values."""


class PanelParseError(TensorTopsisError):
    """A panel CSV file does not conform to the expected layout."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
