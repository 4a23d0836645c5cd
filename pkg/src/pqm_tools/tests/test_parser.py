"""
Test suite for `pqm_tools.parser` module.
"""
from pathlib import Path

import pytest

from ..builtins import builtin_environment, constant_types
from ..circuit import default_signature
from ..metatheory import GenSpec, GenerationFailure, generate_configuration
from ..parser import (
    LexError,
    ParseError,
    SourceProgram,
    TokenKind,
    parse_program,
    parse_term,
    parse_type,
    pretty_term,
    pretty_type,
    tokenize,
)
from ..syntax import (
    BIT,
    QUBIT,
    App,
    Bang,
    BoxedCirc,
    Circ,
    Const,
    Lam,
    LetPair,
    LiftT,
    ListT,
    Lolli,
    NatT,
    Pair,
    Seq,
    Sum,
    Tensor,
    Term,
    Unit,
    UnitV,
    Var,
    WellFormednessError,
    alpha_equivalent,
    children,
)

PROGRAMS = Path(__file__).parents[3] / "programs"
CONSTANTS = frozenset(
    constant_types(builtin_environment(default_signature()))
)
WIRES = default_signature().wire_types


def test_tokenize():
    """
    Keywords, identifiers, symbols and comments.
    """
    assert [t.kind for t in tokenize("lift x")] == [
        TokenKind.KW_LIFT,
        TokenKind.IDENT,
    ]
    assert tokenize("") == []
    assert tokenize("   -- only a comment\n") == []
    kinds = [t.kind for t in tokenize("fun q : Qubit -o Qubit . #L3")]
    assert kinds == [
        TokenKind.KW_FUN,
        TokenKind.IDENT,
        TokenKind.COLON,
        TokenKind.IDENT,
        TokenKind.LOLLI,
        TokenKind.IDENT,
        TokenKind.DOT,
        TokenKind.LABEL,
    ]
    arrow = tokenize("x -> y")
    assert arrow[1].kind is TokenKind.ARROW


def test_token_spans():
    """
    Tokens carry 1-based line and column.
    """
    tokens = tokenize("let\n  x = 1")
    assert tokens[0].span.line == 1
    assert tokens[1].span.line == 2
    assert tokens[1].span.column == 3
    assert tokens[3].text == "1"


def test_lex_error():
    """
    An illegal character raises `LexError` at its position.
    """
    with pytest.raises(LexError) as e:
        tokenize("H $")
    assert e.value.span.column == 3


def test_parse_lambda():
    """
    Gate names resolve to constants, bound names to variables.
    """
    term = parse_term("fun x : Qubit . H x", CONSTANTS, WIRES)
    assert term == Lam("x", QUBIT, App(Const("H"), Var("x")))
    shadowed = parse_term("fun H : Qubit . H", frozenset(), WIRES)
    assert shadowed == Lam("H", QUBIT, Var("H"))


@pytest.mark.parametrize(
    "text,expected",
    [
        ("I", Unit()),
        ("Qubit * Bit * I", Tensor(QUBIT, Tensor(BIT, Unit()))),
        ("Qubit -o Qubit -o I", Lolli(QUBIT, Lolli(QUBIT, Unit()))),
        ("I + I * Nat", Sum(Unit(), Tensor(Unit(), NatT()))),
        ("!(Qubit -o Qubit)", Bang(Lolli(QUBIT, QUBIT))),
        ("List Qubit * Nat", Tensor(ListT(QUBIT), NatT())),
        ("Circ(Qubit * Qubit, Bit)", Circ(Tensor(QUBIT, QUBIT), BIT)),
        ("(Qubit -o Qubit) -o Nat", Lolli(Lolli(QUBIT, QUBIT), NatT())),
    ],
)
def test_parse_type(text, expected):
    """
    Type precedence: `-o` weakest, then `+`, then `*`, prefix strongest.
    """
    parsed = parse_type(text, WIRES)
    assert parsed == expected
    assert parse_type(pretty_type(parsed), WIRES) == parsed


def test_ill_formed_types():
    """
    Non-simple `Circ` sides and undeclared wire types are rejected.
    """
    with pytest.raises(WellFormednessError):
        parse_type("Circ(Qubit -o Qubit, I)", WIRES)
    with pytest.raises(WellFormednessError):
        parse_type("Qutrit", WIRES)
    assert parse_type("Qutrit") is not None


def test_pretty_type():
    """
    Rendering of prefix types.
    """
    assert pretty_type(Bang(Unit())) == "!I"
    assert pretty_type(Tensor(Lolli(QUBIT, QUBIT), Unit())) == (
        "(Qubit -o Qubit) * I"
    )


@pytest.mark.parametrize(
    "text,expected",
    [
        ("()", UnitV()),
        ("(x, y, z)", Pair(Var("x"), Pair(Var("y"), Var("z")))),
        ("f x y", App(App(Var("f"), Var("x")), Var("y"))),
        ("lift H", LiftT(Const("H"))),
        ("x; y", Seq(Var("x"), Var("y"))),
        (
            "let (a, b) = p in (b, a)",
            LetPair("a", "b", Var("p"), Pair(Var("b"), Var("a"))),
        ),
    ],
)
def test_parse_term(text, expected):
    """
    Term forms and application associativity.
    """
    assert parse_term(text, CONSTANTS, WIRES) == expected


@pytest.mark.parametrize(
    "text,expected",
    [
        ("fun x Qubit . x", ":"),
        ("(x, y", ")"),
        ("let x = () y", "in"),
        ("x )", "end of input"),
        ("box[Qubit]", "term"),
        ("fun H : Qubit . H", "variable name"),
    ],
)
def test_parse_errors(text, expected):
    """
    Parse errors name what would have been accepted.
    """
    with pytest.raises(ParseError) as e:
        parse_term(text, CONSTANTS, WIRES)
    assert expected in e.value.expected
    assert e.value.span is not None


def _has_boxed_literal(term: Term) -> bool:
    if isinstance(term, BoxedCirc):
        return True
    return any(_has_boxed_literal(child) for child in children(term))


def test_round_trip_generated_terms():
    """
    Pretty-printing then parsing gives back an alpha-equivalent term.
    Boxed circuit literals have no concrete syntax and are skipped.
    """
    spec = GenSpec(seed=7)
    checked = 0
    for seed in spec.trial_seeds(1000):
        try:
            term = generate_configuration(spec, seed).term
        except GenerationFailure:
            continue
        if _has_boxed_literal(term):
            continue
        text = pretty_term(term)
        parsed = parse_term(text, CONSTANTS, WIRES)
        assert alpha_equivalent(parsed, term), text
        checked += 1
    assert checked >= 300


def test_parse_program():
    """
    Definitions, lookups and desugaring.
    """
    program = parse_program(
        "def id : !(Qubit -o Qubit) = lift (fun q : Qubit . q);\n"
        "def main : Qubit -o Qubit = force id;\n",
        CONSTANTS,
        WIRES,
    )
    assert program.names() == ["id", "main"]
    assert program.get("main").declared_type == Lolli(QUBIT, QUBIT)
    assert [d.name for d in program.reachable("id")] == ["id"]
    with pytest.raises(SourceProgram.UnknownEntry):
        program.get("missing")
    term = program.desugar()
    assert term.var == "id"
    assert term.body.var == "main"
    assert term.body.body == Var("main")


def test_program_errors():
    """
    Duplicate definitions, missing separators and stray characters.
    """
    with pytest.raises(ParseError):
        parse_program("def a : I = (); def a : I = ();", CONSTANTS, WIRES)
    with pytest.raises(ParseError):
        parse_program("def a : I = ()", CONSTANTS, WIRES)
    with pytest.raises(LexError):
        parse_program("def a : I = () ; @", CONSTANTS, WIRES)


@pytest.mark.parametrize(
    "path",
    sorted(PROGRAMS.glob("*/*.pqm")),
    ids=lambda p: f"{p.parent.name}/{p.stem}",
)
def test_corpus_parses(path):
    """
    Every program in the corpus parses and pretty-prints back.
    """
    program = parse_program(path.read_text(), CONSTANTS, WIRES)
    assert program.names()
    for definition in program.definitions:
        text = pretty_term(definition.body)
        scope = set(program.names())
        reparsed = parse_term(text, CONSTANTS - scope, WIRES)
        assert alpha_equivalent(reparsed, definition.body)
