"""Exception types shared across the package."""

from __future__ import annotations


class PsiError(ValueError):
    """Base class for domain errors (CLI exit code 1)."""


class ParseError(PsiError):
    """Malformed word/loop DSL or graph file, with a 1-based position."""

    def __init__(self, message: str, line: int = 1, column: int = 1, source: str = "<input>"):
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")


class AlphabetError(PsiError):
    pass


class GraphError(PsiError):
    """Raised when an operation needs a valid graph and gets an invalid one."""

    def __init__(self, message: str, violations: list[str] | None = None):
        self.violations = list(violations or [])
        if self.violations:
            message = message + ": " + "; ".join(self.violations)
        super().__init__(message)
