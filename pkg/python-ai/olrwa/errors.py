# python-ai/olrwa/errors.py
"""Exceptions raised by the OLR-WA library and the benchmark harness."""

from typing import Optional


class OLRWAError(Exception):
    """Base class for every error raised by the olrwa package"""


class SingularMatrix(OLRWAError, ValueError):
    """A pivot fell below the singularity threshold during elimination"""

    def __init__(self, message: str = "Matrix is singular", pivot: Optional[float] = None):
        super().__init__(message)
        self.pivot = pivot


class InconsistentSystem(OLRWAError, ValueError):
    """The constraint rows are dependent and the right-hand side is not in their image"""


class DimensionMismatch(OLRWAError, ValueError):
    def __init__(self, expected: int, got: int, what: str = "vector"):
        super().__init__(f"Dimension mismatch for {what}: expected {expected}, got {got}")
        self.expected = expected
        self.got = got


class ZeroVariance(OLRWAError, ValueError):
    """R² is undefined because all targets are equal"""


class Divergence(OLRWAError, ArithmeticError):
    """LMS weights blew past the divergence bound"""


class DegenerateHyperplane(OLRWAError, ValueError):
    """The hyperplane is vertical in the target direction and is not a function y = f(x)"""


class ZeroAverage(OLRWAError, ValueError):
    """The weighted normals cancelled out"""


class ParallelHyperplanes(OLRWAError, ValueError):
    """Two distinct parallel hyperplanes have no intersection"""


class BatchTooSmall(OLRWAError, ValueError):
    def __init__(self, size: int, minimum: int):
        super().__init__(f"Incremental batch has {size} points, at least {minimum} are needed")
        self.size = size
        self.minimum = minimum


class InsufficientData(OLRWAError, ValueError):
    """Not enough points for the base fit or for a single increment"""


class MissingColumn(OLRWAError, KeyError):
    def __init__(self, column: str, path: str = ""):
        super().__init__(column)
        self.column = column
        self.path = path

    def __str__(self):
        where = f" in {self.path}" if self.path else ""
        return f"Missing column '{self.column}'{where}"


class ParseError(OLRWAError, ValueError):
    def __init__(self, row: int, column: str, value: str, path: str = ""):
        where = f"{path}: " if path else ""
        super().__init__(f"{where}row {row} (file line {row + 2}), column '{column}': cannot parse {value!r} as a number")
        self.row = row
        self.column = column
        self.value = value
        self.path = path


class FieldCountMismatch(ParseError):
    """A data row has a different number of fields than the header"""

    def __init__(self, row: int, expected: int, got: int, path: str = ""):
        where = f"{path}: " if path else ""
        super(ParseError, self).__init__(f"{where}row {row} (file line {row + 2}) has {got} field(s), "
                                         f"the header has {expected}")
        self.row = row
        self.column = None
        self.value = None
        self.expected = expected
        self.got = got
        self.path = path
