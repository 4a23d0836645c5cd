"""
Program files: sequences of `def name : type = term ;` definitions.
"""
from dataclasses import dataclass, field
from typing import AbstractSet, Dict, List, Optional, Set

from ..syntax import Let, Span, Term, Type, Var, free_variables
from .lexer import ParseError, TokenKind, tokenize
from .parser import Parser


@dataclass(kw_only=True, frozen=True)
class Definition:
    """
    A single top-level definition.
    """

    name: str
    declared_type: Type
    body: Term
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(kw_only=True)
class SourceProgram:
    """
    Definitions in source order. Later definitions may refer to earlier
    ones by name.
    """

    definitions: List[Definition]
    entry: Optional[str] = None

    class UnknownEntry(Exception):
        """
        The requested entry definition does not exist.
        """

        name: str

        def __init__(self, name: str, *args):
            super().__init__(args)
            self.name = name

        def __str__(self):
            """Print exception string"""
            return f"no definition named {self.name}"

    def get(self, name: str) -> Definition:
        """
        Definition called `name`.
        """
        for definition in self.definitions:
            if definition.name == name:
                return definition
        raise SourceProgram.UnknownEntry(name)

    def names(self) -> List[str]:
        """
        Definition names in source order.
        """
        return [definition.name for definition in self.definitions]

    def reachable(self, entry: Optional[str] = None) -> List[Definition]:
        """
        Definitions `entry` depends on, transitively, in source order and
        ending with `entry` itself.
        """
        root = self.get(entry or self.entry or "main")
        index: Dict[str, Definition] = {d.name: d for d in self.definitions}
        needed = {root.name}
        pending = [root]
        while pending:
            current = pending.pop()
            for name in free_variables(current.body):
                if name in index and name not in needed:
                    needed.add(name)
                    pending.append(index[name])
        return [d for d in self.definitions if d.name in needed]

    def desugar(self, entry: Optional[str] = None) -> Term:
        """
        The entry definition as a single term: the definitions it needs,
        wrapped as nested `let`s around a reference to it.
        """
        definitions = self.reachable(entry)
        term: Term = Var(definitions[-1].name)
        for definition in reversed(definitions):
            term = Let(
                definition.name, definition.body, term, span=definition.span
            )
        return term


def parse_program(
    text: str,
    constants: AbstractSet[str] = frozenset(),
    wire_types: Optional[AbstractSet[str]] = None,
) -> SourceProgram:
    """
    Parse a program file.
    """
    parser = Parser(
        tokenize(text), constants, wire_types, text_length=len(text)
    )
    definitions: List[Definition] = []
    seen: Set[str] = set()
    while not parser.at(TokenKind.EOF):
        start = parser.expect(TokenKind.KW_DEF)
        name_token = parser.expect_ident()
        if name_token.text in seen:
            raise ParseError(
                f"definition {name_token.text} given twice",
                name_token.span,
                {"fresh definition name"},
            )
        parser.expect(TokenKind.COLON)
        declared = parser.parse_type()
        parser.expect(TokenKind.EQUALS)
        body = parser.bound(sorted(seen), parser.parse_term)
        parser.expect(TokenKind.SEMI)
        seen.add(name_token.text)
        definitions.append(
            Definition(
                name=name_token.text,
                declared_type=declared,
                body=body,
                span=parser.span_from(start),
            )
        )
    return SourceProgram(definitions=definitions)
