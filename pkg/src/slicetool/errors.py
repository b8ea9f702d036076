"""Exception types shared across the toolkit."""

from __future__ import annotations

from typing import Optional


class SliceToolError(Exception):
    """Base class for all toolkit errors."""


class SlirSyntaxError(SliceToolError):
    """Grammar violation in SLIR input, with source location."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class SlirValidationError(SliceToolError):
    """Structurally well-formed input that breaks a model invariant
    (duplicate signature, undeclared local, dangling label, ...)."""

    def __init__(self, message: str, method: Optional[str] = None):
        full = f"{method}: {message}" if method else message
        super().__init__(full)
        self.method = method
        self.message = message


class DatasetFormatError(SliceToolError):
    """Malformed dataset file, with the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class UnknownSourceError(SliceToolError):
    """A slicing request named a node id that is not in the graph."""


class UnsupportedStatementError(SliceToolError):
    """A statement kind outside the Java-rendering rules reached the renderer."""
