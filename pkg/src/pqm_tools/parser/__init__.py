"""
Concrete syntax: tokenizer, parser, pretty-printer and program files.
"""

from .lexer import (
    LexError,
    ParseError,
    SyntaxFailure,
    Token,
    TokenKind,
    tokenize,
)
from .parser import Parser, parse_term, parse_type
from .pretty import pretty_term, pretty_type
from .program import Definition, SourceProgram, parse_program

__all__ = (
    "Definition",
    "LexError",
    "ParseError",
    "Parser",
    "SourceProgram",
    "SyntaxFailure",
    "Token",
    "TokenKind",
    "parse_program",
    "parse_term",
    "parse_type",
    "pretty_term",
    "pretty_type",
    "tokenize",
)
