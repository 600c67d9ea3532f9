"""Diagnostic errors raised by the MiniLang analysis pipeline.

Every error carries a source span so the CLI can report file:line:col.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    """Half-open byte range [start, end) with the 1-based line/column of start."""

    start: int
    end: int
    line: int
    col: int

    def contains(self, other: Span) -> bool:
        return self.start <= other.start and other.end <= self.end

    def contains_point(self, offset: int) -> bool:
        return self.start <= offset < self.end


DUMMY_SPAN = Span(0, 0, 1, 1)


class MiniLangError(Exception):
    """Base for all diagnostics with a source location."""

    def __init__(self, message: str, span: Span):
        super().__init__(message)
        self.message = message
        self.span = span

    def render(self, path: str = "<source>") -> str:
        return f"{path}:{self.span.line}:{self.span.col}: {self.message}"


class LexError(MiniLangError):
    """Unrecognizable character or unterminated comment/string."""


class ParseError(MiniLangError):
    """Syntax error, duplicate declaration, or missing main."""


class ResolveError(MiniLangError):
    """Unresolved name or global qualifier without a global declaration."""


class UndefinedEfficiencyError(ValueError):
    """Coding efficiency is undefined for LOC = 0."""
