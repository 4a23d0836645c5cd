"""
Tokenizer for `.pqm` source text.
"""
import re
from enum import Enum
from typing import List, NamedTuple, Optional, Set

from ..syntax import Span


class TokenKind(Enum):
    """
    Token categories. Keyword kinds are prefixed `KW_`.
    """

    IDENT = "identifier"
    NUMBER = "number"
    LABEL = "label"
    KW_LET = "let"
    KW_IN = "in"
    KW_FUN = "fun"
    KW_LIFT = "lift"
    KW_FORCE = "force"
    KW_BOX = "box"
    KW_APPLY = "apply"
    KW_LEFT = "left"
    KW_RIGHT = "right"
    KW_CASE = "case"
    KW_OF = "of"
    KW_ABORT = "abort"
    KW_NIL = "nil"
    KW_CONS = "cons"
    KW_SUCC = "succ"
    KW_DEF = "def"
    LPAREN = "("
    RPAREN = ")"
    LBRACK = "["
    RBRACK = "]"
    LBRACE = "{"
    RBRACE = "}"
    COMMA = ","
    SEMI = ";"
    DOT = "."
    ARROW = "->"
    LOLLI = "-o"
    STAR = "*"
    PLUS = "+"
    BANG = "!"
    EQUALS = "="
    BAR = "|"
    COLON = ":"
    EOF = "end of input"


KEYWORDS = {
    kind.value: kind for kind in TokenKind if kind.name.startswith("KW_")
}

SYMBOLS = sorted(
    (
        kind
        for kind in TokenKind
        if not kind.name.startswith("KW_")
        and kind
        not in (
            TokenKind.IDENT,
            TokenKind.NUMBER,
            TokenKind.LABEL,
            TokenKind.EOF,
        )
    ),
    key=lambda kind: -len(kind.value),
)

IDENT_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
NUMBER_PATTERN = re.compile(r"0|[1-9][0-9]*")
LABEL_LITERAL_PATTERN = re.compile(r"#L(0|[1-9][0-9]*)")


class Token(NamedTuple):
    """
    A token with its text, span and character offset.
    """

    kind: TokenKind
    text: str
    span: Span
    offset: int

    def __str__(self) -> str:
        """Render for error messages"""
        if self.kind in (TokenKind.IDENT, TokenKind.NUMBER, TokenKind.LABEL):
            return f"{self.kind.value} {self.text!r}"
        return repr(self.text) if self.text else self.kind.value


class SyntaxFailure(Exception):
    """
    Base class of errors raised while reading source text.
    """

    message: str
    span: Optional[Span]

    def __init__(self, message: str, span: Optional[Span], *args):
        super().__init__(args)
        self.message = message
        self.span = span

    def __str__(self):
        """Print exception string"""
        if self.span is None:
            return self.message
        return f"{self.span.line}:{self.span.column}: {self.message}"


class LexError(SyntaxFailure):
    """
    A character that starts no token.
    """


class ParseError(SyntaxFailure):
    """
    A token that does not fit the grammar; `expected` lists what would
    have been accepted.
    """

    expected: Set[str]

    def __init__(
        self, message: str, span: Optional[Span], expected: Set[str], *args
    ):
        super().__init__(message, span, *args)
        self.expected = expected

    def __str__(self):
        """Print exception string"""
        expected = ", ".join(sorted(self.expected))
        return f"{super().__str__()} (expected {expected})"


def tokenize(text: str) -> List[Token]:
    """
    Split `text` into tokens. Whitespace and `--` comments are skipped; no
    end-of-input token is produced.
    """
    tokens: List[Token] = []
    line, line_start, position = 1, 0, 0
    while position < len(text):
        char = text[position]
        if char == "\n":
            line += 1
            position += 1
            line_start = position
            continue
        if char.isspace():
            position += 1
            continue
        if text.startswith("--", position):
            end = text.find("\n", position)
            position = len(text) if end < 0 else end
            continue

        def emit(kind: TokenKind, length: int) -> None:
            span = Span(line, position - line_start + 1, length)
            tokens.append(
                Token(kind, text[position : position + length], span, position)
            )

        match = IDENT_PATTERN.match(text, position)
        if match is not None:
            word = match.group(0)
            emit(KEYWORDS.get(word, TokenKind.IDENT), len(word))
            position = match.end()
            continue
        match = NUMBER_PATTERN.match(text, position)
        if match is not None:
            emit(TokenKind.NUMBER, len(match.group(0)))
            position = match.end()
            continue
        match = LABEL_LITERAL_PATTERN.match(text, position)
        if match is not None:
            emit(TokenKind.LABEL, len(match.group(0)))
            position = match.end()
            continue
        for kind in SYMBOLS:
            if text.startswith(kind.value, position):
                emit(kind, len(kind.value))
                position += len(kind.value)
                break
        else:
            raise LexError(
                f"illegal character {char!r}",
                Span(line, position - line_start + 1, 1),
            )
    return tokens
