"""Tokenizer and token cursor shared by the presentation, predicate and config parsers."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>->|==|!=|[=<>|,{}():*^+\[\]])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", "op", "eof"
    value: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, value, line, column))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            column = len(value) - value.rfind("\n")
        else:
            column += len(value)
        pos = m.end()
    tokens.append(Token("eof", "", line, column))
    return tokens


class Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @classmethod
    def of(cls, text: str, line: int = 1, column: int = 1) -> "Cursor":
        return cls(tokenize(text, line, column))

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def at(self, value: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok.kind != "eof" and tok.value == value

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.pos += 1
            return True
        return False

    def expect(self, value: str) -> Token:
        if not self.at(value):
            self.error(f"expected {value!r}")
        return self.next()

    def ident(self, what: str = "identifier") -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            self.error(f"expected {what}")
        return self.next()

    def at_eof(self) -> bool:
        return self.peek().kind == "eof"

    def expect_eof(self):
        if not self.at_eof():
            self.error("unexpected trailing input")

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        found = tok.value or "end of input"
        raise ParseError(f"{message}, found {found!r}", tok.line, tok.column)

    def word(self, stop=()) -> tuple[str, ...]:
        """A whitespace-separated word: identifiers and ``1``, at least one token."""
        symbols = []
        consumed = 0
        while True:
            tok = self.peek()
            if tok.kind == "ident" and tok.value not in stop:
                symbols.append(tok.value)
            elif tok.kind == "int" and tok.value == "1":
                pass
            else:
                break
            self.next()
            consumed += 1
        if not consumed:
            self.error("expected a word")
        return tuple(symbols)
