"""Tokenizer for MiniImp source text."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError

KEYWORDS = frozenset(
    ["int", "float", "bool", "char", "string", "void", "if", "else", "while",
     "return", "print", "true", "false"]
)

# Longest-match first.
OPERATORS = ("&&", "||", "==", "!=", "<=", ">=", "<", ">", "+", "-", "*", "/",
             "%", "^", "!", "=", "(", ")", "{", "}", "[", "]", ",", ";")

ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "0": "\0", "\\": "\\", "'": "'", '"': '"'}


@dataclass
class Token:
    kind: str  # "ident", "keyword", "int", "float", "char", "string", "op", "eof"
    text: str
    value: object
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def error(msg: str):
        raise ParseError(msg, line, col)

    def advance(k: int = 1):
        nonlocal i, line, col
        for _ in range(k):
            if i < n and source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance()
            continue
        if ch == "/" and source.startswith("//", i):
            while i < n and source[i] != "\n":
                advance()
            continue
        start_line, start_col = line, col
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            is_float = False
            if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                is_float = True
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    is_float = True
                    j = k
                    while j < n and source[j].isdigit():
                        j += 1
            text = source[i:j]
            advance(j - i)
            if is_float:
                tokens.append(Token("float", text, float(text), start_line, start_col))
            else:
                tokens.append(Token("int", text, int(text), start_line, start_col))
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            advance(j - i)
            kind = "keyword" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, text, start_line, start_col))
            continue
        if ch == "'":
            advance()
            if i >= n:
                error("unterminated character literal")
            if source[i] == "\\":
                advance()
                if i >= n or source[i] not in ESCAPES:
                    error("unknown escape in character literal")
                value = ESCAPES[source[i]]
                advance()
            elif source[i] == "'":
                error("empty character literal")
            else:
                value = source[i]
                advance()
            if i >= n or source[i] != "'":
                error("unterminated character literal")
            advance()
            tokens.append(Token("char", value, value, start_line, start_col))
            continue
        if ch == '"':
            advance()
            parts: list[str] = []
            while i < n and source[i] != '"':
                if source[i] == "\n":
                    error("unterminated string literal")
                if source[i] == "\\":
                    advance()
                    if i >= n or source[i] not in ESCAPES:
                        error("unknown escape in string literal")
                    parts.append(ESCAPES[source[i]])
                else:
                    parts.append(source[i])
                advance()
            if i >= n:
                error("unterminated string literal")
            advance()
            value = "".join(parts)
            tokens.append(Token("string", value, value, start_line, start_col))
            continue
        for op in OPERATORS:
            if source.startswith(op, i):
                advance(len(op))
                tokens.append(Token("op", op, op, start_line, start_col))
                break
        else:
            error(f"unexpected character {ch!r}")
    tokens.append(Token("eof", "", None, line, col))
    return tokens
