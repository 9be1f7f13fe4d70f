"""Tokeniser for Essence Prime model and parameter files.

Comments run from `$` to end of line. Integer literals are non-negative
(unary minus is an operator) and must fit in signed 64 bits. Multi-character
operators are matched longest-first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .domains import INT64_MAX
from .errors import LexError


class TokenType(enum.Enum):
    KEYWORD = enum.auto()
    IDENT = enum.auto()
    INT = enum.auto()
    OP = enum.auto()
    EOF = enum.auto()


@dataclass(frozen=True)
class Token:
    type: TokenType
    value: object
    line: int = field(compare=False, default=0)
    col: int = field(compare=False, default=0)

    def __repr__(self):
        return f"{self.type.name}({self.value!r})"


# Appendix-style reserved words; `forall` is an accepted spelling of forAll.
RESERVED = {
    "forall", "forAll", "exists", "sum", "such", "that", "letting",
    "given", "where", "find", "language", "int", "bool", "union",
    "intersect", "in", "false", "true",
}

# Longest first so that maximal munch falls out of a linear scan.
OPERATORS = [
    "<=lex", ">=lex", "<lex", ">lex",
    "<->", "->", "**", "/\\", "\\/", "<=", ">=", "!=", "..",
    "=", "<", ">", "+", "-", "*", "/", "%", "!",
    "(", ")", "[", "]", "{", "}", ",", ";", ":", "|", ".",
]


def tokenize(text: str) -> list[Token]:
    toks = []
    i, line, bol = 0, 1, 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            i += 1
            bol = i
            continue
        if c in " \t\r":
            i += 1
            continue
        if c == "$":
            while i < n and text[i] != "\n":
                i += 1
            continue
        col = i - bol + 1
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            val = int(text[i:j])
            if val > INT64_MAX:
                raise LexError(f"integer literal {text[i:j]} overflows 64 bits",
                               line, col)
            toks.append(Token(TokenType.INT, val, line, col))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in RESERVED:
                if word == "forall":
                    word = "forAll"
                toks.append(Token(TokenType.KEYWORD, word, line, col))
            else:
                toks.append(Token(TokenType.IDENT, word, line, col))
            i = j
            continue
        for op in OPERATORS:
            if text.startswith(op, i):
                toks.append(Token(TokenType.OP, op, line, col))
                i += len(op)
                break
        else:
            raise LexError(f"unexpected character {c!r}", line, col)
    toks.append(Token(TokenType.EOF, None, line, 1 if i == bol else i - bol + 1))
    return toks
