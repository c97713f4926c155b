"""Exception types shared across the package."""

from __future__ import annotations


class Suborbit5Error(Exception):
    """Base class for errors raised by this package."""


class ResourceError(Suborbit5Error):
    """A configured size bound (degree, index, orbit size) was exceeded."""


class SearchFailure(Suborbit5Error):
    """A seeded randomized search exhausted its retry budget."""


class StateError(Suborbit5Error):
    """An operation needs a frozen group (stabilizer chain) but got none."""


class UnsupportedError(Suborbit5Error):
    """The request is outside what the library constructs."""


class PreconditionError(Suborbit5Error):
    """Hypotheses required for a result to be meaningful do not hold."""


class ConstantCorruptionError(Suborbit5Error):
    """Embedded constants failed their load-time validation."""


class GeneratorFileError(ValueError):
    """Malformed generator file; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
