"""
Structural operations on terms: free identifiers, capture-avoiding
substitution and alpha-equivalence.
"""
import itertools
from typing import Callable, Dict, FrozenSet, Iterable, Tuple

from .labels import Label
from .terms import (
    Abort,
    App,
    ApplyT,
    BoxedCirc,
    BoxT,
    Case,
    Cons,
    Const,
    ForceT,
    Lam,
    LabelRef,
    Left,
    Let,
    LetPair,
    LiftT,
    NatLit,
    Nil,
    Pair,
    Right,
    Seq,
    Succ,
    Term,
    UnitV,
    Var,
)


def free_identifiers(term: Term) -> Tuple[FrozenSet[str], FrozenSet[Label]]:
    """
    Free variables and free labels of `term`. Labels inside boxed circuits
    are internal to the circuit and never free.
    """
    return term.identifiers


def free_variables(term: Term) -> FrozenSet[str]:
    """
    Free variables of `term`.
    """
    return free_identifiers(term)[0]


def free_labels(term: Term) -> FrozenSet[Label]:
    """
    Free labels of `term`.
    """
    return free_identifiers(term)[1]


_NO_NAMES: FrozenSet[str] = frozenset()
_NO_LABELS: FrozenSet[Label] = frozenset()


def _under(
    term: Term, *bound: str
) -> Tuple[FrozenSet[str], FrozenSet[Label]]:
    variables, labels = term.identifiers
    if bound and not variables.isdisjoint(bound):
        variables = variables.difference(bound)
    return variables, labels


def _union(
    *parts: Tuple[FrozenSet[str], FrozenSet[Label]]
) -> Tuple[FrozenSet[str], FrozenSet[Label]]:
    variables, labels = _NO_NAMES, _NO_LABELS
    for part_variables, part_labels in parts:
        # share a child set when the other side is empty
        if part_variables:
            variables = (
                variables | part_variables if variables else part_variables
            )
        if part_labels:
            labels = labels | part_labels if labels else part_labels
    return variables, labels


def node_identifiers(
    term: Term,
) -> Tuple[FrozenSet[str], FrozenSet[Label]]:
    """
    Free identifiers of one node from the cached ones of its children.
    """
    if isinstance(term, Var):
        return frozenset({term.name}), _NO_LABELS
    if isinstance(term, LabelRef):
        return _NO_NAMES, frozenset({term.label})
    if isinstance(term, (BoxedCirc, UnitV, NatLit, Nil)):
        return _NO_NAMES, _NO_LABELS
    if isinstance(term, Const):
        return _union(*(arg.identifiers for arg in term.args))
    if isinstance(term, Let):
        return _union(term.bound.identifiers, _under(term.body, term.var))
    if isinstance(term, LetPair):
        return _union(
            term.bound.identifiers,
            _under(term.body, term.first_var, term.second_var),
        )
    if isinstance(term, Lam):
        return _under(term.body, term.var)
    if isinstance(term, Case):
        return _union(
            term.scrutinee.identifiers,
            _under(term.left_body, term.left_var),
            _under(term.right_body, term.right_var),
        )
    if isinstance(term, (Abort, Left, Right, LiftT, ForceT, BoxT, Succ)):
        return term.body.identifiers
    if isinstance(term, (Seq, Pair)):
        return _union(term.first.identifiers, term.second.identifiers)
    if isinstance(term, App):
        return _union(term.fun.identifiers, term.arg.identifiers)
    if isinstance(term, ApplyT):
        return _union(term.circuit.identifiers, term.arg.identifiers)
    if isinstance(term, Cons):
        return _union(term.head.identifiers, term.tail.identifiers)
    raise TypeError(f"unknown term {term!r}")


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """
    `base` primed until it avoids every name in `avoid`.
    """
    taken = set(avoid)
    candidate = base
    while candidate in taken:
        candidate += "'"
    return candidate


def substitute(term: Term, name: str, value: Term) -> Term:
    """
    `term[value/name]`, renaming binders that would capture free variables
    of `value`.
    """
    return _subst(term, name, value, free_variables(value))


def _binder(
    var: str,
    body: Term,
    name: str,
    value: Term,
    value_fvs: FrozenSet[str],
) -> Tuple[str, Term]:
    """
    Push a substitution under one binder.
    """
    if var == name:
        return var, body
    if var in value_fvs:
        renamed = fresh_name(
            var, value_fvs | free_variables(body) | {name}
        )
        body = _subst(body, var, Var(renamed), frozenset({renamed}))
        var = renamed
    return var, _subst(body, name, value, value_fvs)


def _subst(
    term: Term, name: str, value: Term, fvs: FrozenSet[str]
) -> Term:
    if name not in term.identifiers[0]:
        return term
    if isinstance(term, Var):
        return value if term.name == name else term
    if isinstance(term, (LabelRef, BoxedCirc, UnitV, NatLit, Nil)):
        return term
    if isinstance(term, Const):
        if not term.args:
            return term
        return Const(
            term.name,
            tuple(_subst(a, name, value, fvs) for a in term.args),
            span=term.span,
        )
    if isinstance(term, Let):
        var, body = _binder(term.var, term.body, name, value, fvs)
        return Let(var, _subst(term.bound, name, value, fvs), body)
    if isinstance(term, LetPair):
        bound = _subst(term.bound, name, value, fvs)
        if name in (term.first_var, term.second_var):
            return LetPair(term.first_var, term.second_var, bound, term.body)
        first, second, body = term.first_var, term.second_var, term.body
        if first in fvs or second in fvs:
            avoid = fvs | free_variables(body) | {name, first, second}
            if first in fvs:
                renamed = fresh_name(first, avoid)
                body = _subst(
                    body, first, Var(renamed), frozenset({renamed})
                )
                avoid = avoid | {renamed}
                first = renamed
            if second in fvs:
                renamed = fresh_name(second, avoid)
                body = _subst(
                    body, second, Var(renamed), frozenset({renamed})
                )
                second = renamed
        return LetPair(first, second, bound, _subst(body, name, value, fvs))
    if isinstance(term, Lam):
        var, body = _binder(term.var, term.body, name, value, fvs)
        return Lam(var, term.var_type, body)
    if isinstance(term, Case):
        lvar, lbody = _binder(term.left_var, term.left_body, name, value, fvs)
        rvar, rbody = _binder(
            term.right_var, term.right_body, name, value, fvs
        )
        return Case(
            _subst(term.scrutinee, name, value, fvs), lvar, lbody, rvar, rbody
        )
    if isinstance(term, Abort):
        return Abort(term.type, _subst(term.body, name, value, fvs))
    if isinstance(term, Left):
        return Left(
            term.left_type,
            term.right_type,
            _subst(term.body, name, value, fvs),
        )
    if isinstance(term, Right):
        return Right(
            term.left_type,
            term.right_type,
            _subst(term.body, name, value, fvs),
        )
    if isinstance(term, LiftT):
        return LiftT(_subst(term.body, name, value, fvs))
    if isinstance(term, ForceT):
        return ForceT(_subst(term.body, name, value, fvs))
    if isinstance(term, BoxT):
        return BoxT(term.inp_type, _subst(term.body, name, value, fvs))
    if isinstance(term, Succ):
        return Succ(_subst(term.body, name, value, fvs))
    if isinstance(term, Seq):
        return Seq(
            _subst(term.first, name, value, fvs),
            _subst(term.second, name, value, fvs),
        )
    if isinstance(term, Pair):
        return Pair(
            _subst(term.first, name, value, fvs),
            _subst(term.second, name, value, fvs),
        )
    if isinstance(term, App):
        return App(
            _subst(term.fun, name, value, fvs),
            _subst(term.arg, name, value, fvs),
        )
    if isinstance(term, ApplyT):
        return ApplyT(
            _subst(term.circuit, name, value, fvs),
            _subst(term.arg, name, value, fvs),
        )
    if isinstance(term, Cons):
        return Cons(
            _subst(term.head, name, value, fvs),
            _subst(term.tail, name, value, fvs),
        )
    raise TypeError(f"unknown term {term!r}")


def rename_bound(term: Term, fresh: Callable[[str], str]) -> Term:
    """
    Rename every bound variable of `term` with `fresh(old_name)`. Free
    variables are untouched.
    """
    return _rename(term, {}, fresh)


def _rename(
    term: Term, env: Dict[str, str], fresh: Callable[[str], str]
) -> Term:
    def go(t: Term) -> Term:
        return _rename(t, env, fresh)

    def under(var: str, body: Term) -> Tuple[str, Term]:
        new = fresh(var)
        return new, _rename(body, {**env, var: new}, fresh)

    if isinstance(term, Var):
        return Var(env.get(term.name, term.name))
    if isinstance(term, (LabelRef, BoxedCirc, UnitV, NatLit, Nil)):
        return term
    if isinstance(term, Const):
        return Const(term.name, tuple(go(a) for a in term.args))
    if isinstance(term, Let):
        bound = go(term.bound)
        var, body = under(term.var, term.body)
        return Let(var, bound, body)
    if isinstance(term, LetPair):
        bound = go(term.bound)
        first, second = fresh(term.first_var), fresh(term.second_var)
        inner = {**env, term.first_var: first, term.second_var: second}
        return LetPair(first, second, bound, _rename(term.body, inner, fresh))
    if isinstance(term, Lam):
        var, body = under(term.var, term.body)
        return Lam(var, term.var_type, body)
    if isinstance(term, Case):
        scrutinee = go(term.scrutinee)
        lvar, lbody = under(term.left_var, term.left_body)
        rvar, rbody = under(term.right_var, term.right_body)
        return Case(scrutinee, lvar, lbody, rvar, rbody)
    if isinstance(term, Abort):
        return Abort(term.type, go(term.body))
    if isinstance(term, Left):
        return Left(term.left_type, term.right_type, go(term.body))
    if isinstance(term, Right):
        return Right(term.left_type, term.right_type, go(term.body))
    if isinstance(term, LiftT):
        return LiftT(go(term.body))
    if isinstance(term, ForceT):
        return ForceT(go(term.body))
    if isinstance(term, BoxT):
        return BoxT(term.inp_type, go(term.body))
    if isinstance(term, Succ):
        return Succ(go(term.body))
    if isinstance(term, Seq):
        return Seq(go(term.first), go(term.second))
    if isinstance(term, Pair):
        return Pair(go(term.first), go(term.second))
    if isinstance(term, App):
        return App(go(term.fun), go(term.arg))
    if isinstance(term, ApplyT):
        return ApplyT(go(term.circuit), go(term.arg))
    if isinstance(term, Cons):
        return Cons(go(term.head), go(term.tail))
    raise TypeError(f"unknown term {term!r}")


def canonical_form(term: Term) -> Term:
    """
    Representative of the alpha-equivalence class of `term`: bound
    variables are renamed `%0`, `%1`, ... in binding order and boxed
    circuits are canonicalized.
    """
    counter = itertools.count()
    renamed = rename_bound(term, lambda _: f"%{next(counter)}")
    return _canonical_circuits(renamed)


def _canonical_circuits(term: Term) -> Term:
    if isinstance(term, BoxedCirc):
        return BoxedCirc(term.boxed.canonicalize())
    if isinstance(term, Const) and term.args:
        return Const(
            term.name, tuple(_canonical_circuits(a) for a in term.args)
        )
    return _map_children(term, _canonical_circuits)


def _map_children(term: Term, f: Callable[[Term], Term]) -> Term:
    if isinstance(term, Let):
        return Let(term.var, f(term.bound), f(term.body))
    if isinstance(term, LetPair):
        return LetPair(
            term.first_var, term.second_var, f(term.bound), f(term.body)
        )
    if isinstance(term, Lam):
        return Lam(term.var, term.var_type, f(term.body))
    if isinstance(term, Case):
        return Case(
            f(term.scrutinee),
            term.left_var,
            f(term.left_body),
            term.right_var,
            f(term.right_body),
        )
    if isinstance(term, Abort):
        return Abort(term.type, f(term.body))
    if isinstance(term, Left):
        return Left(term.left_type, term.right_type, f(term.body))
    if isinstance(term, Right):
        return Right(term.left_type, term.right_type, f(term.body))
    if isinstance(term, LiftT):
        return LiftT(f(term.body))
    if isinstance(term, ForceT):
        return ForceT(f(term.body))
    if isinstance(term, BoxT):
        return BoxT(term.inp_type, f(term.body))
    if isinstance(term, Succ):
        return Succ(f(term.body))
    if isinstance(term, Seq):
        return Seq(f(term.first), f(term.second))
    if isinstance(term, Pair):
        return Pair(f(term.first), f(term.second))
    if isinstance(term, App):
        return App(f(term.fun), f(term.arg))
    if isinstance(term, ApplyT):
        return ApplyT(f(term.circuit), f(term.arg))
    if isinstance(term, Cons):
        return Cons(f(term.head), f(term.tail))
    return term


def alpha_equivalent(left: Term, right: Term) -> bool:
    """
    True iff the terms differ only by names of bound variables and by
    label renamings inside boxed circuits.
    """
    return canonical_form(left) == canonical_form(right)


def rename_labels(term: Term, mapping: Dict[Label, Label]) -> Term:
    """
    Apply a label renaming to the free labels of `term`.
    """
    if not term.identifiers[1]:
        return term
    if isinstance(term, LabelRef):
        return LabelRef(mapping.get(term.label, term.label))
    if isinstance(term, Const) and term.args:
        return Const(
            term.name, tuple(rename_labels(a, mapping) for a in term.args)
        )
    return _map_children(term, lambda t: rename_labels(t, mapping))
