"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class WordBreakError(Exception):
    """Base class for all library errors."""


class SlpError(WordBreakError, ValueError):
    """Malformed or inconsistent straight-line program."""

    def __init__(self, message: str, lineno: int | None = None) -> None:
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ExpansionTooLarge(WordBreakError):
    def __init__(self, length: int, limit: int) -> None:
        self.length = length
        self.limit = limit
        super().__init__(f"expansion length {length} exceeds limit {limit}")


class PositionError(WordBreakError, IndexError):
    """A position or range falls outside the text."""


class DictionaryError(WordBreakError, ValueError):
    pass


class DimensionError(WordBreakError, ValueError):
    pass


class MemoryBudgetError(WordBreakError):
    def __init__(self, needed: int, cap: int) -> None:
        self.needed = needed
        self.cap = cap
        super().__init__(f"index needs ~{needed} bytes, cap is {cap}")


class IndexFormatError(WordBreakError, ValueError):
    pass
