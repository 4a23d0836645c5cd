"""
Boxed circuits and the operations the evaluator performs on them: fresh
label generation, grafting with renaming, inversion and equivalence up to
renaming of labels.
"""
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

from ..syntax import (
    Circ,
    DuplicateLabel,
    Label,
    LabelRef,
    NotALabelTuple,
    Pair,
    Tensor,
    Term,
    Type,
    Unit,
    UnitV,
    WireType,
    label_tuple,
    rename_labels,
    tuple_labels,
    wire_leaves,
)
from .circuit import (
    GateApplication,
    LabelAllocator,
    LabelledCircuit,
    check_connection,
)
from .context import LabelContext
from .errors import (
    CloningError,
    InvalidCircuit,
    NotInvertible,
    ShapeMismatch,
)
from .signature import Signature


def tuple_type(term: Term, context: Mapping[Label, str]) -> Type:
    """
    Simple M-type of label tuple `term` under `context`.
    """
    if isinstance(term, LabelRef):
        return WireType(context[term.label])
    if isinstance(term, Pair):
        return Tensor(
            tuple_type(term.first, context), tuple_type(term.second, context)
        )
    if isinstance(term, UnitV):
        return Unit()
    raise NotALabelTuple(term)


def same_shape(left: Term, right: Term) -> bool:
    """
    True iff two label tuples have the same nesting structure.
    """
    if isinstance(left, LabelRef):
        return isinstance(right, LabelRef)
    if isinstance(left, Pair):
        return (
            isinstance(right, Pair)
            and same_shape(left.first, right.first)
            and same_shape(left.second, right.second)
        )
    return isinstance(left, UnitV) and isinstance(right, UnitV)


@dataclass(frozen=True)
class BoxedCircuit:
    """
    `(in_tuple, circuit, out_tuple)`: a circuit packaged with label tuples
    naming its inputs and outputs.
    """

    in_tuple: Term
    circuit: LabelledCircuit
    out_tuple: Term

    def __post_init__(self) -> None:
        """Tuples must enumerate the circuit's interfaces exactly"""
        problems: List[str] = []
        for side, tuple_, context in (
            ("input", self.in_tuple, self.circuit.inputs),
            ("output", self.out_tuple, self.circuit.outputs),
        ):
            try:
                labels = tuple_labels(tuple_)
            except (DuplicateLabel, NotALabelTuple) as e:
                problems.append(f"{side} tuple: {e}")
                continue
            if set(labels) != set(context):
                problems.append(
                    f"{side} tuple {tuple_} does not enumerate {context}"
                )
        if problems:
            raise InvalidCircuit(problems)

    @staticmethod
    def identity(shape: Type, allocator: LabelAllocator) -> "BoxedCircuit":
        """
        Boxed identity circuit of simple M-type `shape`.
        """
        context, labels = freshlabels(shape, allocator)
        return BoxedCircuit(
            labels, LabelledCircuit.identity(context), labels
        )

    def input_type(self) -> Type:
        """
        Simple M-type `T` of the input interface.
        """
        return tuple_type(self.in_tuple, self.circuit.inputs)

    def output_type(self) -> Type:
        """
        Simple M-type `U` of the output interface.
        """
        return tuple_type(self.out_tuple, self.circuit.outputs)

    def circuit_type(self) -> Circ:
        """
        `Circ(T, U)` for this boxed circuit.
        """
        return Circ(self.input_type(), self.output_type())

    def size(self) -> int:
        """
        Number of gate applications.
        """
        return self.circuit.size()

    def rename(self, mapping: Mapping[Label, Label]) -> "BoxedCircuit":
        """
        Apply a label renaming throughout.
        """
        return BoxedCircuit(
            rename_labels(self.in_tuple, dict(mapping)),
            self.circuit.rename(mapping),
            rename_labels(self.out_tuple, dict(mapping)),
        )

    def canonicalize(self) -> "BoxedCircuit":
        """
        Canonical representative: input tuple leaves first in tuple
        order, then gate outputs in gate-list order.
        """
        mapping = self.circuit.canonical_renaming(
            tuple_labels(self.in_tuple)
        )
        return self.rename(mapping)

    def equiv(self, other: "BoxedCircuit") -> bool:
        """
        True iff the two boxed circuits differ by a renaming of labels.
        """
        return self.canonicalize() == other.canonicalize()

    def validate(self, signature: Signature) -> "BoxedCircuit":
        """
        Raise `InvalidCircuit` unless the underlying circuit is valid.
        """
        self.circuit.validate(signature)
        return self

    def __str__(self) -> str:
        """Render in emitter notation"""
        gates = "; ".join(str(app) for app in self.circuit.gates)
        return f"<{self.in_tuple} | {gates} | {self.out_tuple}>"


def freshlabels(
    shape: Type, allocator: LabelAllocator
) -> Tuple[LabelContext, Term]:
    """
    Fresh labels for the wire leaves of `shape`, left to right, as a label
    context and a label tuple mirroring `shape`.
    """
    wires = list(wire_leaves(shape))
    labels = [allocator.fresh() for _ in wires]
    return LabelContext(zip(labels, wires)), label_tuple(shape, labels)


def graft_renaming(
    circuit: LabelledCircuit,
    fixed: Mapping[Label, Label],
    allocator: LabelAllocator,
) -> Dict[Label, Label]:
    """
    Renaming of every label of `circuit`: labels in `fixed` go to their
    image, all others to fresh labels.
    """
    mapping: Dict[Label, Label] = dict(fixed)
    for label in sorted(circuit.labels()):
        if label not in mapping:
            mapping[label] = allocator.fresh()
    return mapping


def append(
    circuit: LabelledCircuit,
    targets: Term,
    boxed: BoxedCircuit,
    allocator: LabelAllocator,
) -> Tuple[LabelledCircuit, Term]:
    """
    Graft `boxed` onto the live wires `targets` of `circuit`. Returns the
    extended circuit and the label tuple naming the grafted outputs.
    """
    try:
        wanted = tuple_labels(targets)
    except DuplicateLabel as e:
        raise CloningError(e.label)
    except NotALabelTuple:
        raise ShapeMismatch(str(boxed.input_type()), str(targets))
    inputs = tuple_labels(boxed.in_tuple)
    check_connection(
        circuit.outputs,
        wanted,
        [boxed.circuit.inputs[label] for label in inputs],
        str(boxed.input_type()),
    )
    if not same_shape(targets, boxed.in_tuple):
        raise ShapeMismatch(str(boxed.input_type()), str(targets))
    mapping = graft_renaming(
        boxed.circuit, dict(zip(inputs, wanted)), allocator
    )
    grafted = boxed.circuit.rename(mapping)
    live = dict(circuit.outputs.without(wanted))
    live.update(grafted.outputs)
    extended = LabelledCircuit(
        circuit.inputs, circuit.gates + grafted.gates, LabelContext(live)
    )
    return extended, rename_labels(boxed.out_tuple, mapping)


def invert(boxed: BoxedCircuit, signature: Signature) -> BoxedCircuit:
    """
    Boxed circuit running `boxed` backwards: gates reversed and each
    replaced by its inverse, interfaces swapped.
    """
    gates: List[GateApplication] = []
    for application in reversed(boxed.circuit.gates):
        decl = signature.gate(application.gate)
        if not decl.invertible:
            raise NotInvertible(application.gate)
        inverse = signature.inverse_of(application.gate)
        gates.append(
            GateApplication(
                inverse.name, application.outputs, application.inputs
            )
        )
    circuit = LabelledCircuit(
        boxed.circuit.outputs, tuple(gates), boxed.circuit.inputs
    )
    return BoxedCircuit(boxed.out_tuple, circuit, boxed.in_tuple)


def equiv(left: BoxedCircuit, right: BoxedCircuit) -> bool:
    """
    True iff the boxed circuits differ by a renaming of labels.
    """
    return left.equiv(right)

