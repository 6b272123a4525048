"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class GridlockError(Exception):
    """Base class for all library errors."""


class InvalidGrid(GridlockError, ValueError):
    pass


class NotAPermutation(InvalidGrid):
    pass


class SharedCell(InvalidGrid):
    def __init__(self, row: int, message: str | None = None):
        self.row = row
        super().__init__(message or f"row {row}: X and O occupy the same cell")


class SizeTooSmall(InvalidGrid):
    pass


class GridParseError(InvalidGrid):
    """Malformed grid file; ``position`` is a (line, column) pair when known."""

    def __init__(self, message: str, position: tuple[int, int] | None = None):
        self.position = position
        if position is not None:
            message = f"line {position[0]}, column {position[1]}: {message}"
        super().__init__(message)


class MultiComponent(GridlockError, ValueError):
    pass


class BadIndex(GridlockError, IndexError):
    pass


class Interleaved(GridlockError, ValueError):
    pass


class ZeroZero(GridlockError, ValueError):
    pass


class BudgetExceeded(GridlockError):
    def __init__(self, message: str, count: int | None = None, budget: int | None = None):
        self.count = count
        self.budget = budget
        super().__init__(message)


class WindowTooNarrow(GridlockError):
    pass


class NotDeconvolvable(GridlockError, ValueError):
    pass


class DimMismatch(GridlockError, ValueError):
    pass


class NoSolution(GridlockError):
    pass


class NotAComplex(GridlockError, ValueError):
    pass


class IncomparableUnknowns(GridlockError):
    pass


class ScriptError(GridlockError, ValueError):
    """Base for move-script errors; carries a 1-based (line, column)."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, column {col or 1}: {message}"
        super().__init__(message)


class ScriptSyntaxError(ScriptError):
    pass


class UnknownMove(ScriptError):
    pass


class UndeclaredComponent(ScriptError):
    pass


class LedgerMismatch(ScriptError):
    pass


class MultiEnd(ScriptError):
    pass


class EndpointMismatch(ScriptError):
    pass
