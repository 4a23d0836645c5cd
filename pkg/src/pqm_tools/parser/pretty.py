"""
Pretty-printer producing text the parser reads back to an
alpha-equivalent term.
"""
from typing import List

from ..syntax import (
    Abort,
    App,
    ApplyT,
    Bang,
    BoxedCirc,
    BoxT,
    Case,
    Circ,
    Cons,
    Const,
    ForceT,
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
    Succ,
    Sum,
    Tensor,
    Term,
    Type,
    TypeVar,
    Unit,
    UnitV,
    Var,
    WireType,
    Zero,
)

# type levels
LOLLI, SUM, TENSOR, UNARY = range(4)

# term levels
BINDER, SEQ, APP, ARG = range(4)


def pretty_type(t: Type, level: int = LOLLI) -> str:
    """
    Render a type; `level` is the binding strength of the context.
    """
    if isinstance(t, Lolli):
        text = f"{pretty_type(t.arg, SUM)} -o {pretty_type(t.result, LOLLI)}"
        mine = LOLLI
    elif isinstance(t, Sum):
        text = f"{pretty_type(t.left, TENSOR)} + {pretty_type(t.right, SUM)}"
        mine = SUM
    elif isinstance(t, Tensor):
        text = (
            f"{pretty_type(t.left, UNARY)} * {pretty_type(t.right, TENSOR)}"
        )
        mine = TENSOR
    elif isinstance(t, Bang):
        return "!" + pretty_type(t.body, UNARY)
    elif isinstance(t, ListT):
        return "List " + pretty_type(t.elem, UNARY)
    elif isinstance(t, Circ):
        return f"Circ({pretty_type(t.inp)}, {pretty_type(t.out)})"
    elif isinstance(t, WireType):
        return t.name
    elif isinstance(t, TypeVar):
        return t.name
    elif isinstance(t, Unit):
        return "I"
    elif isinstance(t, NatT):
        return "Nat"
    elif isinstance(t, Zero):
        return "0"
    else:
        raise TypeError(f"unknown type {t!r}")
    return f"({text})" if mine < level else text


def _types(*types: Type) -> str:
    return "[" + ", ".join(pretty_type(t) for t in types) + "]"


def _pair_items(term: Pair) -> str:
    items = [pretty_term(term.first)]
    rest = term.second
    while isinstance(rest, Pair):
        items.append(pretty_term(rest.first))
        rest = rest.second
    items.append(pretty_term(rest))
    return "(" + ", ".join(items) + ")"


def pretty_term(term: Term, level: int = BINDER) -> str:
    """
    Render a term; `level` is the binding strength of the context.
    """
    if isinstance(term, Let):
        text = (
            f"let {term.var} = {pretty_term(term.bound)} in "
            + pretty_term(term.body)
        )
        mine = BINDER
    elif isinstance(term, LetPair):
        text = (
            f"let ({term.first_var}, {term.second_var}) = "
            + f"{pretty_term(term.bound)} in {pretty_term(term.body)}"
        )
        mine = BINDER
    elif isinstance(term, Lam):
        text = (
            f"fun {term.var} : {pretty_type(term.var_type)} . "
            + pretty_term(term.body)
        )
        mine = BINDER
    elif isinstance(term, Case):
        text = (
            f"case {pretty_term(term.scrutinee)} of "
            + f"left {term.left_var} -> {pretty_term(term.left_body)} | "
            + f"right {term.right_var} -> {pretty_term(term.right_body)}"
        )
        mine = BINDER
    elif isinstance(term, Seq):
        text = f"{pretty_term(term.first, APP)}; {pretty_term(term.second)}"
        mine = SEQ
    elif isinstance(term, App):
        text = f"{pretty_term(term.fun, APP)} {pretty_term(term.arg, ARG)}"
        mine = APP
    elif isinstance(term, Const) and term.args:
        text = " ".join(
            [term.name] + [pretty_term(arg, ARG) for arg in term.args]
        )
        mine = APP
    elif isinstance(term, LiftT):
        text = "lift " + pretty_term(term.body, ARG)
        mine = ARG
    elif isinstance(term, ForceT):
        text = "force " + pretty_term(term.body, ARG)
        mine = ARG
    elif isinstance(term, Succ):
        text = "succ " + pretty_term(term.body, ARG)
        mine = ARG
    elif isinstance(term, BoxT):
        text = f"box{_types(term.inp_type)} {pretty_term(term.body, ARG)}"
        mine = ARG
    elif isinstance(term, Abort):
        text = f"abort{_types(term.type)} {pretty_term(term.body, ARG)}"
        mine = ARG
    elif isinstance(term, (Left, Right)):
        keyword = "left" if isinstance(term, Left) else "right"
        text = (
            f"{keyword}{_types(term.left_type, term.right_type)} "
            + pretty_term(term.body, ARG)
        )
        mine = ARG
    elif isinstance(term, (Var, Const)):
        return term.name
    elif isinstance(term, LabelRef):
        return f"#{term.label}"
    elif isinstance(term, NatLit):
        return str(term.value)
    elif isinstance(term, UnitV):
        return "()"
    elif isinstance(term, Pair):
        return _pair_items(term)
    elif isinstance(term, ApplyT):
        return (
            f"apply({pretty_term(term.circuit)}, {pretty_term(term.arg)})"
        )
    elif isinstance(term, Cons):
        return _pretty_spine(term)
    elif isinstance(term, Nil):
        return f"nil{_types(term.elem_type)}"
    elif isinstance(term, BoxedCirc):
        return str(term.boxed)
    else:
        raise TypeError(f"unknown term {term!r}")
    return f"({text})" if mine < level else text


def _pretty_spine(term: Cons) -> str:
    """
    Render a chain of `cons` cells without recursing down the tail.
    """
    heads: List[str] = []
    tail: Term = term
    while isinstance(tail, Cons):
        heads.append(pretty_term(tail.head))
        tail = tail.tail
    opened = "".join(f"cons({head}, " for head in heads)
    return opened + pretty_term(tail) + ")" * len(heads)
