"""
Test suite for `pqm_tools.syntax` module.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ..syntax import (
    BIT,
    QUBIT,
    App,
    Bang,
    Circ,
    Cons,
    Const,
    DuplicateLabel,
    Label,
    LabelRef,
    Lam,
    Let,
    LetPair,
    LiftT,
    ListT,
    Lolli,
    NatLit,
    NatT,
    Nil,
    NotALabelTuple,
    Pair,
    Succ,
    Sum,
    Tensor,
    TypeVar,
    Unit,
    UnitV,
    Var,
    WellFormednessError,
    Zero,
    alpha_equivalent,
    canonical_form,
    free_labels,
    free_variables,
    fresh_name,
    is_parameter_type,
    is_simple_m_type,
    is_state_type,
    is_value,
    label_tuple,
    match_type,
    rename_bound,
    rename_labels,
    substitute,
    term_size,
    tuple_labels,
)


def test_label_parsing():
    """
    Test `Label.parse` on strings, indices and labels.
    """
    assert Label.parse("L0") == Label(0)
    assert Label.parse("L12") == Label(12)
    assert Label.parse(3) == Label(3)
    assert Label.parse(Label(4)) == Label(4)
    assert str(Label(7)) == "L7"
    assert Label(1) < Label(2)
    for text in ("L", "L01", "X1", "l1", ""):
        with pytest.raises(Label.InvalidLabel):
            Label.parse(text)
    with pytest.raises(Label.InvalidLabel):
        Label.parse(-1)


def test_circ_requires_simple_types():
    """
    `Circ` only accepts simple M-types on both sides.
    """
    Circ(Tensor(QUBIT, BIT), Unit())
    with pytest.raises(WellFormednessError):
        Circ(Lolli(QUBIT, QUBIT), Unit())
    with pytest.raises(WellFormednessError):
        Circ(QUBIT, Sum(Unit(), Unit()))
    with pytest.raises(WellFormednessError):
        Circ(NatT(), QUBIT)


@pytest.mark.parametrize(
    "type,parameter,simple,state",
    [
        (QUBIT, False, True, True),
        (Unit(), True, True, True),
        (Zero(), True, False, False),
        (NatT(), True, False, False),
        (Bang(Lolli(QUBIT, QUBIT)), True, False, False),
        (Circ(QUBIT, QUBIT), True, False, False),
        (Tensor(QUBIT, BIT), False, True, True),
        (Tensor(NatT(), Unit()), True, False, False),
        (Sum(Unit(), Unit()), True, False, True),
        (Sum(QUBIT, Unit()), False, False, True),
        (ListT(NatT()), True, False, False),
        (ListT(QUBIT), False, False, True),
        (Lolli(Unit(), Unit()), False, False, False),
    ],
)
def test_type_classification(type, parameter, simple, state):
    """
    Parameter, simple M-type and state type classifications.
    """
    assert is_parameter_type(type) == parameter
    assert is_simple_m_type(type) == simple
    assert is_state_type(type) == state


def test_match_type():
    """
    Schema matching binds variables consistently.
    """
    t = TypeVar("T", simple=True)
    a = TypeVar("A")
    subst = {}
    assert match_type(
        Lolli(Circ(t, t), NatT()), Lolli(Circ(QUBIT, QUBIT), NatT()), subst
    )
    assert subst == {"T": QUBIT}
    assert not match_type(Circ(t, t), Circ(QUBIT, BIT), {})
    assert not match_type(t, NatT(), {})
    assert match_type(a, NatT(), {})


def test_substitution_avoids_capture():
    """
    Substituting under a binder renames the binder when it would capture.
    """
    body = Lam("y", QUBIT, App(Var("x"), Var("y")))
    result = substitute(body, "x", Var("y"))
    assert isinstance(result, Lam)
    assert result.var != "y"
    assert free_variables(result) == {"y"}
    assert alpha_equivalent(
        result, Lam("z", QUBIT, App(Var("y"), Var("z")))
    )


def test_substitution_respects_shadowing():
    """
    A binder for the substituted name stops substitution.
    """
    term = Pair(Var("x"), Let("x", UnitV(), Var("x")))
    result = substitute(term, "x", NatLit(1))
    assert result == Pair(NatLit(1), Let("x", UnitV(), Var("x")))
    pair = LetPair("x", "y", Var("p"), Pair(Var("x"), Var("q")))
    assert free_variables(substitute(pair, "q", Var("x"))) == {"p", "x"}


def test_pair_binder_renaming_avoids_capture():
    """
    Renaming a pair binder does not let an inner binder of the fresh name
    capture it.
    """
    term = LetPair(
        "x",
        "y",
        Var("b"),
        Pair(Var("z"), Lam("x'", QUBIT, Var("x"))),
    )
    result = substitute(term, "z", Var("x"))
    assert isinstance(result, LetPair)
    inner = result.body.second
    assert isinstance(inner, Lam)
    assert inner.body == Var(result.first_var)
    assert inner.var != result.first_var
    expected = LetPair(
        "p",
        "y",
        Var("b"),
        Pair(Var("x"), Lam("q", QUBIT, Var("p"))),
    )
    assert alpha_equivalent(result, expected)


def test_free_identifiers():
    """
    Free variables and free labels.
    """
    term = Lam(
        "x", QUBIT, Pair(Var("x"), App(Var("f"), LabelRef(Label(2))))
    )
    assert free_variables(term) == {"f"}
    assert free_labels(term) == {Label(2)}


def test_fresh_name():
    """
    Fresh names avoid the given set.
    """
    assert fresh_name("x", set()) == "x"
    assert fresh_name("x", {"x"}) not in {"x"}
    avoid = {"x", "x0", "x1", "x2"}
    assert fresh_name("x", avoid) not in avoid


def test_label_tuples():
    """
    Label tuples: leaves, duplicates and construction from a shape.
    """
    shape = Tensor(QUBIT, Tensor(BIT, Unit()))
    term = label_tuple(shape, [Label(0), Label(1)])
    assert term == Pair(
        LabelRef(Label(0)), Pair(LabelRef(Label(1)), UnitV())
    )
    assert tuple_labels(term) == [Label(0), Label(1)]
    with pytest.raises(DuplicateLabel):
        tuple_labels(Pair(LabelRef(Label(0)), LabelRef(Label(0))))
    with pytest.raises(NotALabelTuple):
        tuple_labels(Pair(LabelRef(Label(0)), NatLit(1)))
    with pytest.raises(ValueError):
        label_tuple(shape, [Label(0)])


def test_values():
    """
    Syntactic values.
    """
    assert is_value(Lam("x", QUBIT, App(Const("H"), Var("x"))))
    assert is_value(LiftT(App(Const("H"), Var("x"))))
    assert is_value(Pair(LabelRef(Label(0)), UnitV()))
    assert is_value(Const("foldNat", (LiftT(UnitV()),)))
    assert not is_value(App(Const("H"), LabelRef(Label(0))))
    assert not is_value(Pair(App(Var("f"), UnitV()), UnitV()))
    assert is_value(Cons(NatLit(1), Cons(NatLit(2), Nil(NatT()))))
    assert not is_value(Cons(Succ(NatLit(1)), Nil(NatT())))
    assert not is_value(Succ(NatLit(1)))


def test_free_identifiers_of_shared_subterms():
    """
    Free identifiers are computed once per node and stay correct when a
    node is shared under different binders.
    """
    shared = Pair(Var("x"), LabelRef(Label(2)))
    bound = Lam("x", QUBIT, shared)
    both = Pair(bound, shared)
    assert free_variables(shared) == {"x"}
    assert free_variables(bound) == frozenset()
    assert free_variables(both) == {"x"}
    assert free_labels(both) == {Label(2)}
    assert shared.identifiers is shared.identifiers
    assert substitute(bound, "x", UnitV()) is bound


def test_rename_labels():
    """
    Label renaming touches labels only.
    """
    term = Pair(LabelRef(Label(0)), Lam("x", QUBIT, LabelRef(Label(1))))
    renamed = rename_labels(term, {Label(0): Label(5)})
    assert renamed == Pair(
        LabelRef(Label(5)), Lam("x", QUBIT, LabelRef(Label(1)))
    )


names = st.sampled_from(["x", "y", "z", "w", "x'", "y'"])


@st.composite
def terms(draw, depth=3):
    """
    Small untyped terms over a few names.
    """
    if depth == 0:
        return draw(
            st.one_of(
                names.map(Var),
                st.just(UnitV()),
                st.integers(0, 3).map(NatLit),
            )
        )
    kind = draw(st.integers(0, 4))
    if kind == 0:
        return Lam(draw(names), QUBIT, draw(terms(depth - 1)))
    if kind == 1:
        return App(draw(terms(depth - 1)), draw(terms(depth - 1)))
    if kind == 2:
        return Pair(draw(terms(depth - 1)), draw(terms(depth - 1)))
    if kind == 3:
        return Let(
            draw(names), draw(terms(depth - 1)), draw(terms(depth - 1))
        )
    first, second = draw(
        st.lists(names, min_size=2, max_size=2, unique=True)
    )
    return LetPair(
        first, second, draw(terms(depth - 1)), draw(terms(depth - 1))
    )


@given(terms())
def test_renaming_bound_variables_is_alpha_equivalent(term):
    """
    Renaming bound variables preserves alpha-equivalence, free variables
    and size.
    """
    renamed = rename_bound(term, lambda name: name + "_1")
    assert alpha_equivalent(term, renamed)
    assert canonical_form(term) == canonical_form(renamed)
    assert free_variables(term) == free_variables(renamed)
    assert term_size(term) == term_size(renamed)


@given(terms(), names, terms(depth=1))
def test_substitution_eliminates_name(term, name, value):
    """
    After substitution of a closed value, the name is no longer free.
    """
    closed = value
    for free in free_variables(value):
        closed = substitute(closed, free, UnitV())
    result = substitute(term, name, closed)
    assert name not in free_variables(result)
    assert free_variables(result) <= free_variables(term)


@given(terms(), names, terms(depth=1))
def test_substitution_is_capture_avoiding(term, name, value):
    """
    Substitution gives the same term as substituting into a copy whose
    binders cannot clash with the free variables of the value.
    """
    apart = rename_bound(term, lambda bound: bound + "_1")
    assert alpha_equivalent(
        substitute(term, name, value), substitute(apart, name, value)
    )
