"""
Terms and values.

Every node is an immutable dataclass. Parsed nodes carry the source span
they came from; spans never take part in equality.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import (
    TYPE_CHECKING,
    FrozenSet,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Tuple,
)

from .labels import Label
from .types import Tensor, Type, Unit, WireType, wire_leaves

if TYPE_CHECKING:
    from ..circuit import BoxedCircuit


class Span(NamedTuple):
    """
    Source position: 1-based line and column plus length in characters.
    """

    line: int
    column: int
    length: int


@dataclass(frozen=True)
class Term:
    """
    Base class of all term constructors.
    """

    span: Optional[Span] = field(
        default=None, compare=False, repr=False, kw_only=True
    )

    def __str__(self) -> str:
        """Render using the surface syntax"""
        from ..parser.pretty import pretty_term

        return pretty_term(self)

    @cached_property
    def identifiers(self) -> Tuple[FrozenSet[str], FrozenSet[Label]]:
        """
        Free variables and free labels, computed once per node from those
        of the children.
        """
        from .substitution import node_identifiers

        return node_identifiers(self)

    @cached_property
    def value_form(self) -> bool:
        """True iff the term is a value, computed once per node"""
        return _value_form(self)


@dataclass(frozen=True)
class Var(Term):
    """
    Variable occurrence.
    """

    name: str


@dataclass(frozen=True)
class LabelRef(Term):
    """
    A label used as a term.
    """

    label: Label


@dataclass(frozen=True)
class Const(Term):
    """
    Built-in constant. `args` holds the values already supplied to a
    constant whose arity has not been reached yet.
    """

    name: str
    args: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class Let(Term):
    """
    `let x = M in N`.
    """

    var: str
    bound: Term
    body: Term


@dataclass(frozen=True)
class Abort(Term):
    """
    `abort[A] M`: eliminator of the empty type.
    """

    type: Type
    body: Term


@dataclass(frozen=True)
class Left(Term):
    """
    `left[A,B] M`.
    """

    left_type: Type
    right_type: Type
    body: Term


@dataclass(frozen=True)
class Right(Term):
    """
    `right[A,B] M`.
    """

    left_type: Type
    right_type: Type
    body: Term


@dataclass(frozen=True)
class Case(Term):
    """
    `case M of left x -> N | right y -> P`.
    """

    scrutinee: Term
    left_var: str
    left_body: Term
    right_var: str
    right_body: Term


@dataclass(frozen=True)
class UnitV(Term):
    """
    `()`.
    """


@dataclass(frozen=True)
class Seq(Term):
    """
    `M; N` where `M : I`.
    """

    first: Term
    second: Term


@dataclass(frozen=True)
class Pair(Term):
    """
    `(M, N)`.
    """

    first: Term
    second: Term


@dataclass(frozen=True)
class LetPair(Term):
    """
    `let (x, y) = M in N`.
    """

    first_var: str
    second_var: str
    bound: Term
    body: Term


@dataclass(frozen=True)
class Lam(Term):
    """
    `fun x : A . M`.
    """

    var: str
    var_type: Type
    body: Term


@dataclass(frozen=True)
class App(Term):
    """
    `M N`.
    """

    fun: Term
    arg: Term


@dataclass(frozen=True)
class LiftT(Term):
    """
    `lift M`.
    """

    body: Term


@dataclass(frozen=True)
class ForceT(Term):
    """
    `force M`.
    """

    body: Term


@dataclass(frozen=True)
class BoxT(Term):
    """
    `box[T] M`.
    """

    inp_type: Type
    body: Term


@dataclass(frozen=True)
class ApplyT(Term):
    """
    `apply(M, N)`.
    """

    circuit: Term
    arg: Term


@dataclass(frozen=True)
class BoxedCirc(Term):
    """
    A boxed circuit value. Never written by users; produced by `box`.
    """

    boxed: "BoxedCircuit"


@dataclass(frozen=True)
class NatLit(Term):
    """
    Natural number literal.
    """

    value: int


@dataclass(frozen=True)
class Succ(Term):
    """
    `succ M`.
    """

    body: Term


@dataclass(frozen=True)
class Nil(Term):
    """
    `nil[A]`.
    """

    elem_type: Type


@dataclass(frozen=True)
class Cons(Term):
    """
    `cons(M, N)`.
    """

    head: Term
    tail: Term


def is_value(term: Term) -> bool:
    """
    True iff `term` is a value. Natural numbers are values only as
    literals; `succ M` always steps to one.
    """
    return term.value_form


def _value_form(term: Term) -> bool:
    if isinstance(
        term,
        (Var, LabelRef, Lam, UnitV, LiftT, BoxedCirc, NatLit, Nil),
    ):
        return True
    if isinstance(term, Const):
        return all(a.value_form for a in term.args)
    if isinstance(term, (Left, Right)):
        return term.body.value_form
    if isinstance(term, Pair):
        return term.first.value_form and term.second.value_form
    if isinstance(term, Cons):
        return term.head.value_form and term.tail.value_form
    return False


class DuplicateLabel(Exception):
    """
    A label tuple mentions the same label twice.
    """

    label: Label

    def __init__(self, label: Label, *args):
        super().__init__(args)
        self.label = label

    def __str__(self):
        """Print exception string"""
        return f"label {self.label} occurs twice in label tuple"


class NotALabelTuple(Exception):
    """
    A term was used where a label tuple was required.
    """

    term: Term

    def __init__(self, term: Term, *args):
        super().__init__(args)
        self.term = term

    def __str__(self):
        """Print exception string"""
        return f"not a label tuple: {self.term}"


def _tuple_leaves(term: Term) -> Iterator[Label]:
    if isinstance(term, LabelRef):
        yield term.label
    elif isinstance(term, Pair):
        yield from _tuple_leaves(term.first)
        yield from _tuple_leaves(term.second)
    elif not isinstance(term, UnitV):
        raise NotALabelTuple(term)


def tuple_labels(term: Term) -> List[Label]:
    """
    Labels of a label tuple, left to right. Raises if `term` is not a label
    tuple or mentions a label twice.
    """
    labels: List[Label] = []
    for label in _tuple_leaves(term):
        if label in labels:
            raise DuplicateLabel(label)
        labels.append(label)
    return labels


def is_label_tuple(term: Term) -> bool:
    """
    True iff `term` is a label tuple with pairwise distinct labels.
    """
    try:
        tuple_labels(term)
    except (NotALabelTuple, DuplicateLabel):
        return False
    return True


def label_tuple(shape: Type, labels: List[Label]) -> Term:
    """
    Build the label tuple of simple M-type `shape` whose leaves are
    `labels` in order.
    """
    expected = len(list(wire_leaves(shape)))
    if expected != len(labels):
        raise ValueError(
            f"{shape} has {expected} wires, got {len(labels)} labels"
        )
    supply = iter(labels)

    def build(t: Type) -> Term:
        if isinstance(t, WireType):
            return LabelRef(next(supply))
        if isinstance(t, Tensor):
            first = build(t.left)
            return Pair(first, build(t.right))
        assert isinstance(t, Unit)
        return UnitV()

    term = build(shape)
    tuple_labels(term)
    return term


def term_size(term: Term) -> int:
    """
    Number of term constructors, ignoring type annotations.
    """
    return 1 + sum(term_size(child) for child in children(term))


def children(term: Term) -> Tuple[Term, ...]:
    """
    Immediate sub-terms, in evaluation order.
    """
    if isinstance(term, Const):
        return term.args
    if isinstance(term, Let):
        return (term.bound, term.body)
    if isinstance(term, (Abort, Left, Right, LiftT, ForceT, Succ)):
        return (term.body,)
    if isinstance(term, BoxT):
        return (term.body,)
    if isinstance(term, Lam):
        return (term.body,)
    if isinstance(term, Case):
        return (term.scrutinee, term.left_body, term.right_body)
    if isinstance(term, (Seq, Pair)):
        return (term.first, term.second)
    if isinstance(term, LetPair):
        return (term.bound, term.body)
    if isinstance(term, App):
        return (term.fun, term.arg)
    if isinstance(term, ApplyT):
        return (term.circuit, term.arg)
    if isinstance(term, Cons):
        return (term.head, term.tail)
    return ()
