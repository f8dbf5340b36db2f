"""Exception hierarchy.

Everything derives from :class:`DepCorrError` so the CLI can map library
failures to exit status 1 with a one-line diagnostic.
"""


class DepCorrError(Exception):
    """Base class for all library errors."""


class DomainError(DepCorrError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ShapeError(DepCorrError, ValueError):
    """Inputs have incompatible lengths or dimensions."""


class DegenerateInputError(DepCorrError, ValueError):
    """Input carries no usable variation (constant series, zero margins)."""


class InsufficientDataError(DepCorrError, ValueError):
    """Too few observations for the requested analysis."""


class ParseError(DepCorrError, ValueError):
    """Malformed input file. ``line`` and ``column`` locate the problem."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
