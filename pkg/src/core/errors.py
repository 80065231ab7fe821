"""
Exception hierarchy shared by the core library and the command line.
"""
from typing import Optional


class CondAlgError(Exception):
    """Base class for every error raised by the toolkit."""


class InputError(CondAlgError, ValueError):
    """Malformed or out-of-range input (exit code 2 on the command line)."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            position = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{message} ({position})"
        super().__init__(message)


class ContractError(CondAlgError):
    """A precondition of an operation does not hold, or two provably equal
    formulations disagree."""
