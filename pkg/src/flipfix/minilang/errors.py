"""Errors raised while parsing or resolving MiniImp source."""

from __future__ import annotations


class MiniLangError(Exception):
    """Base class; carries a source position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.message = message
        self.line = line
        self.col = col


class ParseError(MiniLangError):
    """Lexical or syntactic error."""


class SemanticError(MiniLangError):
    """Unresolved identifier, type mismatch, or structural rule violation."""
