"""
Declarative typing relation, decided by brute force.

Every rule with several premises tries every way of splitting the linear
part of the context between them; parameters are shared. This is
exponential and only meant for small terms, as a reference for the
algorithmic checker.
"""
from itertools import combinations
from typing import (
    Dict,
    FrozenSet,
    Iterator,
    List,
    Mapping,
    Optional,
    Set,
    Tuple,
    Union,
)

from ..circuit import CircuitError, Signature, tuple_type
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
    Succ,
    Sum,
    Tensor,
    Term,
    Type,
    Unit,
    UnitV,
    Var,
    WireType,
    Zero,
    has_type_vars,
    is_parameter_type,
    is_simple_m_type,
    match_type,
    substitute_type,
)

Resource = Union[str, Label]
Resources = FrozenSet[Resource]
Gamma = Tuple[Tuple[str, Type], ...]


def splits(resources: Resources) -> Iterator[Tuple[Resources, Resources]]:
    """
    Every ordered split of `resources` into two disjoint parts.
    """
    items = sorted(resources, key=str)
    for size in range(len(items) + 1):
        for chosen in combinations(items, size):
            first = frozenset(chosen)
            yield first, resources - first


class DeclarativeOracle:
    """
    Decides `gamma; labels |- term : A` by searching all context splits.
    Bare schematic constants have no type here; applied ones are
    instantiated from their arguments.
    """

    constants: Mapping[str, Type]
    signature: Optional[Signature]
    labels: Dict[Label, str]
    memo: Dict[Tuple[Gamma, Resources, Term], FrozenSet[Type]]

    def __init__(
        self,
        constants: Mapping[str, Type],
        signature: Optional[Signature] = None,
    ):
        self.constants = constants
        self.signature = signature
        self.labels = {}
        self.memo = {}

    def derive(
        self,
        gamma: Mapping[str, Type],
        labels: Mapping[Label, str],
        term: Term,
    ) -> FrozenSet[Type]:
        """
        All types `A` with `gamma; labels |- term : A` derivable.
        """
        if dict(labels) != self.labels:
            self.labels = dict(labels)
            self.memo = {}
        linear: Set[Resource] = set(labels)
        linear.update(
            name for name, t in gamma.items() if not is_parameter_type(t)
        )
        return self._derive(
            tuple(sorted(gamma.items(), key=lambda item: item[0])),
            frozenset(linear),
            term,
        )

    def derivable(
        self,
        gamma: Mapping[str, Type],
        labels: Mapping[Label, str],
        term: Term,
        expected: Type,
    ) -> bool:
        """
        True iff `gamma; labels |- term : expected` is derivable.
        """
        return expected in self.derive(gamma, labels, term)

    def _derive(
        self, gamma: Gamma, linear: Resources, term: Term
    ) -> FrozenSet[Type]:
        key = (gamma, linear, term)
        if key not in self.memo:
            self.memo[key] = frozenset(self._rule(gamma, linear, term))
        return self.memo[key]

    def _extend(
        self, gamma: Gamma, linear: Resources, name: str, declared: Type
    ) -> Optional[Tuple[Gamma, Resources]]:
        """
        Context extended by a binder; None when the binder would shadow a
        linear resource that was handed to this premise.
        """
        if name in linear:
            return None
        extended = tuple(
            sorted(
                [(n, t) for n, t in gamma if n != name] + [(name, declared)],
                key=lambda item: item[0],
            )
        )
        if not is_parameter_type(declared):
            linear = linear | {name}
        return extended, linear

    def _under(
        self,
        gamma: Gamma,
        linear: Resources,
        binders: List[Tuple[str, Type]],
        body: Term,
    ) -> FrozenSet[Type]:
        for name, declared in binders:
            extended = self._extend(gamma, linear, name, declared)
            if extended is None:
                return frozenset()
            gamma, linear = extended
        return self._derive(gamma, linear, body)

    def _rule(
        self, gamma: Gamma, linear: Resources, term: Term
    ) -> Set[Type]:
        found: Set[Type] = set()
        if isinstance(term, Var):
            declared = dict(gamma).get(term.name)
            if declared is None:
                return found
            if is_parameter_type(declared):
                return {declared} if not linear else found
            return {declared} if linear == {term.name} else found

        if isinstance(term, LabelRef):
            if term.label in self.labels and linear == {term.label}:
                found.add(WireType(self.labels[term.label]))
            return found

        if isinstance(term, (Const, App)):
            return self._spine(gamma, linear, term)

        if isinstance(term, UnitV):
            return {Unit()} if not linear else found

        if isinstance(term, NatLit):
            return {NatT()} if not linear else found

        if isinstance(term, Nil):
            return {ListT(term.elem_type)} if not linear else found

        if isinstance(term, BoxedCirc):
            if linear:
                return found
            boxed = term.boxed
            try:
                if self.signature is not None:
                    boxed.validate(self.signature)
                found.add(
                    Circ(
                        tuple_type(boxed.in_tuple, boxed.circuit.inputs),
                        tuple_type(boxed.out_tuple, boxed.circuit.outputs),
                    )
                )
            except (KeyError, CircuitError):
                pass
            return found

        if isinstance(term, Lam):
            for body_type in self._under(
                gamma, linear, [(term.var, term.var_type)], term.body
            ):
                found.add(Lolli(term.var_type, body_type))
            return found

        if isinstance(term, LiftT):
            if linear:
                return found
            return {Bang(t) for t in self._derive(gamma, linear, term.body)}

        if isinstance(term, ForceT):
            return {
                t.body
                for t in self._derive(gamma, linear, term.body)
                if isinstance(t, Bang)
            }

        if isinstance(term, BoxT):
            if not is_simple_m_type(term.inp_type):
                return found
            for t in self._derive(gamma, linear, term.body):
                if (
                    isinstance(t, Bang)
                    and isinstance(t.body, Lolli)
                    and t.body.arg == term.inp_type
                    and is_simple_m_type(t.body.result)
                ):
                    found.add(Circ(term.inp_type, t.body.result))
            return found

        if isinstance(term, Succ):
            if NatT() in self._derive(gamma, linear, term.body):
                found.add(NatT())
            return found

        if isinstance(term, Abort):
            if Zero() in self._derive(gamma, linear, term.body):
                found.add(term.type)
            return found

        if isinstance(term, (Left, Right)):
            wanted = (
                term.left_type if isinstance(term, Left) else term.right_type
            )
            if wanted in self._derive(gamma, linear, term.body):
                found.add(Sum(term.left_type, term.right_type))
            return found

        for first, second in splits(linear):
            found.update(self._binary(gamma, first, second, term))
        return found

    def _binary(
        self,
        gamma: Gamma,
        first: Resources,
        second: Resources,
        term: Term,
    ) -> Set[Type]:
        found: Set[Type] = set()
        if isinstance(term, Pair):
            for left in self._derive(gamma, first, term.first):
                for right in self._derive(gamma, second, term.second):
                    found.add(Tensor(left, right))
        elif isinstance(term, Seq):
            if Unit() in self._derive(gamma, first, term.first):
                found.update(self._derive(gamma, second, term.second))
        elif isinstance(term, Let):
            for bound in self._derive(gamma, first, term.bound):
                found.update(
                    self._under(gamma, second, [(term.var, bound)], term.body)
                )
        elif isinstance(term, LetPair):
            if term.first_var == term.second_var:
                return found
            for bound in self._derive(gamma, first, term.bound):
                if isinstance(bound, Tensor):
                    found.update(
                        self._under(
                            gamma,
                            second,
                            [
                                (term.first_var, bound.left),
                                (term.second_var, bound.right),
                            ],
                            term.body,
                        )
                    )
        elif isinstance(term, Case):
            for scrutinee in self._derive(gamma, first, term.scrutinee):
                if isinstance(scrutinee, Sum):
                    left = self._under(
                        gamma,
                        second,
                        [(term.left_var, scrutinee.left)],
                        term.left_body,
                    )
                    right = self._under(
                        gamma,
                        second,
                        [(term.right_var, scrutinee.right)],
                        term.right_body,
                    )
                    found.update(left & right)
        elif isinstance(term, ApplyT):
            for circuit in self._derive(gamma, first, term.circuit):
                if isinstance(circuit, Circ) and circuit.inp in self._derive(
                    gamma, second, term.arg
                ):
                    found.add(circuit.out)
        elif isinstance(term, Cons):
            for head in self._derive(gamma, first, term.head):
                if ListT(head) in self._derive(gamma, second, term.tail):
                    found.add(ListT(head))
        else:
            raise TypeError(f"unknown term {term!r}")
        return found

    def _spine(
        self, gamma: Gamma, linear: Resources, term: Term
    ) -> Set[Type]:
        args: List[Term] = []
        head = term
        while isinstance(head, App):
            args.append(head.arg)
            head = head.fun
        args.reverse()
        if isinstance(head, Const):
            args = list(head.args) + args
            schema = self.constants.get(head.name)
            if schema is None:
                return set()
            starts = [(schema, linear)]
        else:
            starts = [
                (t, rest)
                for used, rest in splits(linear)
                for t in self._derive(gamma, used, head)
            ]
        found: Set[Type] = set()
        for start, rest in starts:
            found.update(self._instantiate(gamma, rest, start, {}, args))
        return found

    def _instantiate(
        self,
        gamma: Gamma,
        linear: Resources,
        current: Type,
        subst: Dict[str, Type],
        args: List[Term],
    ) -> Set[Type]:
        if not args:
            result = substitute_type(current, subst)
            if linear or has_type_vars(result):
                return set()
            return {result}
        if not isinstance(current, Lolli):
            return set()
        found: Set[Type] = set()
        for used, rest in splits(linear):
            for arg_type in self._derive(gamma, used, args[0]):
                extended = dict(subst)
                if match_type(current.arg, arg_type, extended):
                    found.update(
                        self._instantiate(
                            gamma, rest, current.result, extended, args[1:]
                        )
                    )
        return found
