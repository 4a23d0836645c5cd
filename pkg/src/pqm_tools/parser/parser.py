"""
Recursive-descent parser for types and terms.

Grammar, weakest binding first:

    term  ::= let x = term in term
            | let (x, y) = term in term
            | fun x : type . term
            | case term of left x -> term | right y -> term
            | app ; term
            | app
    app   ::= arg arg*
    arg   ::= lift arg | force arg | succ arg | box[type] arg
            | left[type, type] arg | right[type, type] arg
            | abort[type] arg | atom
    atom  ::= ident | number | #Ln | () | (term, ..., term)
            | apply(term, term) | cons(term, term) | nil[type]

    type  ::= sum -o type | sum
    sum   ::= prod + sum | prod
    prod  ::= unary * prod | unary
    unary ::= !unary | List unary | I | Nat | 0 | Circ(type, type)
            | wire | (type)
"""
from typing import AbstractSet, Callable, List, Optional, Set, TypeVar

from ..syntax import (
    Abort,
    App,
    ApplyT,
    Bang,
    BoxT,
    Case,
    Circ,
    Cons,
    Const,
    ForceT,
    Label,
    LabelRef,
    Lam,
    Left,
    Let,
    LetPair,
    LiftT,
    ListT,
    Lolli,
    NatLit,
    NatT,
    Nil,
    Pair,
    Right,
    Seq,
    Span,
    Succ,
    Sum,
    Tensor,
    Term,
    Type,
    Unit,
    UnitV,
    Var,
    WellFormednessError,
    WireType,
    Zero,
)
from .lexer import ParseError, Token, TokenKind, tokenize

T = TypeVar("T")

ARG_STARTERS = {
    TokenKind.KW_LIFT,
    TokenKind.KW_FORCE,
    TokenKind.KW_SUCC,
    TokenKind.KW_BOX,
    TokenKind.KW_LEFT,
    TokenKind.KW_RIGHT,
    TokenKind.KW_ABORT,
    TokenKind.IDENT,
    TokenKind.NUMBER,
    TokenKind.LABEL,
    TokenKind.LPAREN,
    TokenKind.KW_APPLY,
    TokenKind.KW_CONS,
    TokenKind.KW_NIL,
}


class Parser:
    """
    Parser over a token list. `constants` names the identifiers that
    resolve to built-in constants when not bound; `wire_types`, when
    given, restricts the wire type names types may mention.
    """

    tokens: List[Token]
    position: int
    constants: AbstractSet[str]
    wire_types: Optional[AbstractSet[str]]
    scope: List[str]
    eof: Token

    def __init__(
        self,
        tokens: List[Token],
        constants: AbstractSet[str] = frozenset(),
        wire_types: Optional[AbstractSet[str]] = None,
        text_length: int = 0,
    ):
        self.tokens = tokens
        self.position = 0
        self.constants = constants
        self.wire_types = wire_types
        self.scope = []
        end = tokens[-1] if tokens else None
        line = end.span.line if end else 1
        column = end.span.column + end.span.length if end else 1
        self.eof = Token(
            TokenKind.EOF,
            "",
            Span(line, column, 0),
            end.offset + end.span.length if end else text_length,
        )

    # token stream

    def peek(self, ahead: int = 0) -> Token:
        """
        Token `ahead` positions from the cursor, or end of input.
        """
        index = self.position + ahead
        return self.tokens[index] if index < len(self.tokens) else self.eof

    def at(self, *kinds: TokenKind) -> bool:
        """
        True iff the next token has one of `kinds`.
        """
        return self.peek().kind in kinds

    def advance(self) -> Token:
        """
        Consume and return the next token.
        """
        token = self.peek()
        if token.kind is not TokenKind.EOF:
            self.position += 1
        return token

    def fail(self, expected: Set[str]) -> ParseError:
        """
        Error for an unexpected next token.
        """
        token = self.peek()
        return ParseError(f"unexpected {token}", token.span, expected)

    def expect(self, kind: TokenKind) -> Token:
        """
        Consume a token of `kind` or raise.
        """
        if not self.at(kind):
            raise self.fail({kind.value})
        return self.advance()

    def expect_ident(self) -> Token:
        """
        Consume an identifier that may be bound as a variable.
        """
        token = self.expect(TokenKind.IDENT)
        if token.text in self.constants:
            raise ParseError(
                f"cannot bind built-in constant {token.text}",
                token.span,
                {"variable name"},
            )
        return token

    def span_from(self, start: Token) -> Span:
        """
        Span from `start` to the last consumed token.
        """
        last = self.tokens[self.position - 1] if self.position else start
        length = max(last.offset + last.span.length - start.offset, 0)
        return Span(start.span.line, start.span.column, length)

    def finish(self) -> None:
        """
        Require end of input.
        """
        if not self.at(TokenKind.EOF):
            raise self.fail({TokenKind.EOF.value})

    def bound(self, names: List[str], parse: Callable[[], T]) -> T:
        """
        Run `parse` with `names` in scope.
        """
        self.scope.extend(names)
        try:
            return parse()
        finally:
            del self.scope[len(self.scope) - len(names) :]

    # types

    def parse_type(self) -> Type:
        """
        type ::= sum -o type | sum
        """
        left = self.parse_sum_type()
        if self.at(TokenKind.LOLLI):
            self.advance()
            return Lolli(left, self.parse_type())
        return left

    def parse_sum_type(self) -> Type:
        """
        sum ::= prod + sum | prod
        """
        left = self.parse_tensor_type()
        if self.at(TokenKind.PLUS):
            self.advance()
            return Sum(left, self.parse_sum_type())
        return left

    def parse_tensor_type(self) -> Type:
        """
        prod ::= unary * prod | unary
        """
        left = self.parse_unary_type()
        if self.at(TokenKind.STAR):
            self.advance()
            return Tensor(left, self.parse_tensor_type())
        return left

    def parse_unary_type(self) -> Type:
        """
        Prefix type operators and type atoms.
        """
        token = self.peek()
        if token.kind is TokenKind.BANG:
            self.advance()
            return Bang(self.parse_unary_type())
        if token.kind is TokenKind.LPAREN:
            self.advance()
            inner = self.parse_type()
            self.expect(TokenKind.RPAREN)
            return inner
        if token.kind is TokenKind.NUMBER and token.text == "0":
            self.advance()
            return Zero()
        if token.kind is not TokenKind.IDENT:
            raise self.fail({"type"})
        self.advance()
        if token.text == "I":
            return Unit()
        if token.text == "Nat":
            return NatT()
        if token.text == "List":
            return ListT(self.parse_unary_type())
        if token.text == "Circ":
            self.expect(TokenKind.LPAREN)
            inp = self.parse_type()
            self.expect(TokenKind.COMMA)
            out = self.parse_type()
            self.expect(TokenKind.RPAREN)
            try:
                return Circ(inp, out)
            except WellFormednessError as e:
                e.span = self.span_from(token)
                raise
        if self.wire_types is not None and token.text not in self.wire_types:
            raise WellFormednessError(
                token.text, "undeclared wire type", span=token.span
            )
        return WireType(token.text)

    # terms

    def parse_term(self) -> Term:
        """
        Full term, including the weakly binding forms.
        """
        start = self.peek()
        if start.kind is TokenKind.KW_LET:
            return self.parse_let()
        if start.kind is TokenKind.KW_FUN:
            self.advance()
            var = self.expect_ident().text
            self.expect(TokenKind.COLON)
            var_type = self.parse_type()
            self.expect(TokenKind.DOT)
            body = self.bound([var], self.parse_term)
            return Lam(var, var_type, body, span=self.span_from(start))
        if start.kind is TokenKind.KW_CASE:
            return self.parse_case()
        first = self.parse_app()
        if self.at(TokenKind.SEMI) and self.peek(1).kind not in (
            TokenKind.KW_DEF,
            TokenKind.EOF,
        ):
            self.advance()
            second = self.parse_term()
            return Seq(first, second, span=self.span_from(start))
        return first

    def parse_let(self) -> Term:
        """
        `let x = M in N` and `let (x, y) = M in N`.
        """
        start = self.expect(TokenKind.KW_LET)
        if self.at(TokenKind.LPAREN):
            self.advance()
            first = self.expect_ident().text
            self.expect(TokenKind.COMMA)
            second = self.expect_ident().text
            self.expect(TokenKind.RPAREN)
            self.expect(TokenKind.EQUALS)
            bound = self.parse_term()
            self.expect(TokenKind.KW_IN)
            body = self.bound([first, second], self.parse_term)
            return LetPair(
                first, second, bound, body, span=self.span_from(start)
            )
        var = self.expect_ident().text
        self.expect(TokenKind.EQUALS)
        bound = self.parse_term()
        self.expect(TokenKind.KW_IN)
        body = self.bound([var], self.parse_term)
        return Let(var, bound, body, span=self.span_from(start))

    def parse_case(self) -> Term:
        """
        `case M of left x -> N | right y -> P`.
        """
        start = self.expect(TokenKind.KW_CASE)
        scrutinee = self.parse_term()
        self.expect(TokenKind.KW_OF)
        self.expect(TokenKind.KW_LEFT)
        left_var = self.expect_ident().text
        self.expect(TokenKind.ARROW)
        left_body = self.bound([left_var], self.parse_term)
        self.expect(TokenKind.BAR)
        self.expect(TokenKind.KW_RIGHT)
        right_var = self.expect_ident().text
        self.expect(TokenKind.ARROW)
        right_body = self.bound([right_var], self.parse_term)
        return Case(
            scrutinee,
            left_var,
            left_body,
            right_var,
            right_body,
            span=self.span_from(start),
        )

    def parse_app(self) -> Term:
        """
        Left-associated application of juxtaposed arguments.
        """
        start = self.peek()
        term = self.parse_arg()
        while self.peek().kind in ARG_STARTERS:
            arg = self.parse_arg()
            term = App(term, arg, span=self.span_from(start))
        return term

    def parse_bracketed_types(self, count: int) -> List[Type]:
        """
        `[A]` or `[A, B]`.
        """
        self.expect(TokenKind.LBRACK)
        types = [self.parse_type()]
        while len(types) < count:
            self.expect(TokenKind.COMMA)
            types.append(self.parse_type())
        self.expect(TokenKind.RBRACK)
        return types

    def parse_arg(self) -> Term:
        """
        Prefix operators and atoms.
        """
        start = self.peek()
        kind = start.kind
        if kind is TokenKind.KW_LIFT:
            self.advance()
            return LiftT(self.parse_arg(), span=self.span_from(start))
        if kind is TokenKind.KW_FORCE:
            self.advance()
            return ForceT(self.parse_arg(), span=self.span_from(start))
        if kind is TokenKind.KW_SUCC:
            self.advance()
            return Succ(self.parse_arg(), span=self.span_from(start))
        if kind is TokenKind.KW_BOX:
            self.advance()
            (inp,) = self.parse_bracketed_types(1)
            return BoxT(inp, self.parse_arg(), span=self.span_from(start))
        if kind is TokenKind.KW_ABORT:
            self.advance()
            (target,) = self.parse_bracketed_types(1)
            return Abort(target, self.parse_arg(), span=self.span_from(start))
        if kind in (TokenKind.KW_LEFT, TokenKind.KW_RIGHT):
            self.advance()
            left_type, right_type = self.parse_bracketed_types(2)
            body = self.parse_arg()
            constructor = Left if kind is TokenKind.KW_LEFT else Right
            return constructor(
                left_type, right_type, body, span=self.span_from(start)
            )
        return self.parse_atom()

    def parse_atom(self) -> Term:
        """
        Identifiers, literals and bracketed forms.
        """
        start = self.peek()
        kind = start.kind
        if kind is TokenKind.IDENT:
            self.advance()
            if start.text not in self.scope and start.text in self.constants:
                return Const(start.text, span=start.span)
            return Var(start.text, span=start.span)
        if kind is TokenKind.NUMBER:
            self.advance()
            return NatLit(int(start.text), span=start.span)
        if kind is TokenKind.LABEL:
            self.advance()
            return LabelRef(Label.parse(start.text[1:]), span=start.span)
        if kind is TokenKind.KW_NIL:
            self.advance()
            (elem,) = self.parse_bracketed_types(1)
            return Nil(elem, span=self.span_from(start))
        if kind in (TokenKind.KW_APPLY, TokenKind.KW_CONS):
            self.advance()
            self.expect(TokenKind.LPAREN)
            first = self.parse_term()
            self.expect(TokenKind.COMMA)
            second = self.parse_term()
            self.expect(TokenKind.RPAREN)
            if kind is TokenKind.KW_APPLY:
                return ApplyT(first, second, span=self.span_from(start))
            return Cons(first, second, span=self.span_from(start))
        if kind is TokenKind.LPAREN:
            self.advance()
            if self.at(TokenKind.RPAREN):
                self.advance()
                return UnitV(span=self.span_from(start))
            items = [self.parse_term()]
            while self.at(TokenKind.COMMA):
                self.advance()
                items.append(self.parse_term())
            self.expect(TokenKind.RPAREN)
            if len(items) == 1:
                return items[0]
            term = items[-1]
            for item in reversed(items[:-1]):
                term = Pair(item, term, span=self.span_from(start))
            return term
        raise self.fail({"term"})


def parse_type(
    text: str, wire_types: Optional[AbstractSet[str]] = None
) -> Type:
    """
    Parse a complete type.
    """
    parser = Parser(
        tokenize(text), wire_types=wire_types, text_length=len(text)
    )
    result = parser.parse_type()
    parser.finish()
    return result


def parse_term(
    text: str,
    constants: AbstractSet[str] = frozenset(),
    wire_types: Optional[AbstractSet[str]] = None,
) -> Term:
    """
    Parse a complete term. Unbound identifiers in `constants` become
    constants, all other identifiers variables.
    """
    parser = Parser(
        tokenize(text), constants, wire_types, text_length=len(text)
    )
    result = parser.parse_term()
    parser.finish()
    return result
