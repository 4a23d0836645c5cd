"""
The standard constant environment: one constant per gate of the signature,
the meta-operations `size` and `invert`, and the eliminators `foldNat` and
`foldList`.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Mapping, Protocol, Tuple

from ..circuit import (
    BoxedCircuit,
    CloningError,
    ShapeMismatch,
    Signature,
    SignatureError,
    invert,
)
from ..syntax import (
    App,
    Bang,
    BoxedCirc,
    Circ,
    Cons,
    DuplicateLabel,
    ForceT,
    Label,
    LiftT,
    ListT,
    Lolli,
    NatLit,
    NatT,
    Nil,
    NotALabelTuple,
    Pair,
    Tensor,
    Term,
    Type,
    TypeVar,
    label_tuple,
    tuple_labels,
)


class DeltaContext(Protocol):
    """
    What a delta rule may ask of the running evaluator.
    """

    signature: Signature

    def attach_gate(self, gate: str, inputs: List[Label]) -> List[Label]:
        """
        Append `gate` to the circuit under construction.
        """
        ...

    def evaluate(self, term: Term) -> Term:
        """
        Evaluate `term` against the circuit under construction.
        """
        ...


class BadArgument(Exception):
    """
    A constant received a value of the wrong form.
    """

    constant: str
    expected: str
    found: Term

    def __init__(self, constant: str, expected: str, found: Term, *args):
        super().__init__(args)
        self.constant = constant
        self.expected = expected
        self.found = found

    def __str__(self):
        """Print exception string"""
        return f"{self.constant} expects {self.expected}, got {self.found}"


Delta = Callable[[DeltaContext, Tuple[Term, ...]], Term]


class ConstantKind(Enum):
    """
    Kinds of built-in constant.
    """

    GATE = "gate"
    META = "meta"
    ELIMINATOR = "eliminator"


@dataclass(kw_only=True, frozen=True)
class ConstantDecl:
    """
    A built-in constant: its type schema, how many arguments its delta rule
    consumes, and the rule itself.
    """

    name: str
    schema: Type
    arity: int
    delta: Delta
    kind: ConstantKind


def gate_delta(name: str, shape: Type) -> Delta:
    """
    Delta rule of gate `name` with input type `shape`: attach the gate to
    the wires of its label-tuple argument and return the output tuple.
    """

    def delta(context: DeltaContext, args: Tuple[Term, ...]) -> Term:
        (arg,) = args
        try:
            inputs = tuple_labels(arg)
        except NotALabelTuple:
            raise BadArgument(name, f"a label tuple of type {shape}", arg)
        except DuplicateLabel as e:
            raise CloningError(e.label)
        wires = context.signature.gate(name).input_wires()
        if len(inputs) == len(wires) and label_tuple(shape, inputs) != arg:
            raise ShapeMismatch(str(shape), str(arg))
        outputs = context.attach_gate(name, inputs)
        decl = context.signature.gate(name)
        return label_tuple(decl.output, outputs)

    return delta


def _boxed(name: str, term: Term) -> BoxedCircuit:
    if not isinstance(term, BoxedCirc):
        raise BadArgument(name, "a boxed circuit", term)
    return term.boxed


def size_delta(context: DeltaContext, args: Tuple[Term, ...]) -> Term:
    """
    Number of gates of a boxed circuit.
    """
    return NatLit(_boxed("size", args[0]).size())


def invert_delta(context: DeltaContext, args: Tuple[Term, ...]) -> Term:
    """
    The boxed circuit run backwards.
    """
    return BoxedCirc(invert(_boxed("invert", args[0]), context.signature))


def _step(name: str, term: Term) -> Term:
    if not isinstance(term, LiftT):
        raise BadArgument(name, "a lifted step function", term)
    return term


def fold_nat_delta(context: DeltaContext, args: Tuple[Term, ...]) -> Term:
    """
    `foldNat f a n` applies `force f` to `a`, `n` times.
    """
    step, accumulator, count = args
    step = _step("foldNat", step)
    if not isinstance(count, NatLit):
        raise BadArgument("foldNat", "a natural number", count)
    for _ in range(count.value):
        accumulator = context.evaluate(App(ForceT(step), accumulator))
    return accumulator


def fold_list_delta(context: DeltaContext, args: Tuple[Term, ...]) -> Term:
    """
    `foldList f b [a1, ..., an]` threads `b` through `force f (b, ai)`.
    """
    step, accumulator, items = args
    step = _step("foldList", step)
    while isinstance(items, Cons):
        accumulator = context.evaluate(
            App(ForceT(step), Pair(accumulator, items.head))
        )
        items = items.tail
    if not isinstance(items, Nil):
        raise BadArgument("foldList", "a list", items)
    return accumulator


def meta_constants() -> List[ConstantDecl]:
    """
    Constants available under every signature.
    """
    t = TypeVar("T", simple=True)
    u = TypeVar("U", simple=True)
    a = TypeVar("A")
    b = TypeVar("B")
    return [
        ConstantDecl(
            name="size",
            schema=Lolli(Circ(t, u), NatT()),
            arity=1,
            delta=size_delta,
            kind=ConstantKind.META,
        ),
        ConstantDecl(
            name="invert",
            schema=Lolli(Circ(t, u), Circ(u, t)),
            arity=1,
            delta=invert_delta,
            kind=ConstantKind.META,
        ),
        ConstantDecl(
            name="foldNat",
            schema=Lolli(Bang(Lolli(a, a)), Lolli(a, Lolli(NatT(), a))),
            arity=3,
            delta=fold_nat_delta,
            kind=ConstantKind.ELIMINATOR,
        ),
        ConstantDecl(
            name="foldList",
            schema=Lolli(
                Bang(Lolli(Tensor(b, a), b)), Lolli(b, Lolli(ListT(a), b))
            ),
            arity=3,
            delta=fold_list_delta,
            kind=ConstantKind.ELIMINATOR,
        ),
    ]


def builtin_environment(signature: Signature) -> Dict[str, ConstantDecl]:
    """
    Every constant available under `signature`, by name.
    """
    environment: Dict[str, ConstantDecl] = {}
    for gate in signature.gates:
        environment[gate.name] = ConstantDecl(
            name=gate.name,
            schema=Lolli(gate.input, gate.output),
            arity=1,
            delta=gate_delta(gate.name, gate.input),
            kind=ConstantKind.GATE,
        )
    for decl in meta_constants():
        if decl.name in environment:
            raise SignatureError(
                f"gate {decl.name} clashes with a built-in constant"
            )
        environment[decl.name] = decl
    return environment


def constant_types(
    environment: Mapping[str, ConstantDecl]
) -> Dict[str, Type]:
    """
    Type schema of each constant, as the checker expects them.
    """
    return {name: decl.schema for name, decl in environment.items()}
