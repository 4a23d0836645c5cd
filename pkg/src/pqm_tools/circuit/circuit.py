"""
Labelled circuits: morphisms between label contexts, represented as an
ordered list of gate applications that consume and produce labels.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

from ..syntax import Label
from .context import LabelContext
from .errors import (
    CloningError,
    InvalidCircuit,
    ShapeMismatch,
    UnboundLabel,
    UnknownGate,
    WireTypeMismatch,
)
from .signature import Signature


class LabelAllocator:
    """
    Monotone supply of fresh labels. Every label handed out has an index
    strictly greater than every label the allocator has seen.
    """

    next_index: int

    def __init__(self, start: int = 0):
        self.next_index = start

    @classmethod
    def above(cls, *label_sets: Iterable[Label]) -> "LabelAllocator":
        """
        Allocator whose labels are fresh for every label in `label_sets`.
        """
        allocator = cls()
        for labels in label_sets:
            allocator.reserve(labels)
        return allocator

    def fresh(self) -> Label:
        """
        Next unused label.
        """
        label = Label(self.next_index)
        self.next_index += 1
        return label

    def reserve(self, labels: Iterable[Label]) -> None:
        """
        Make sure `labels` are never handed out.
        """
        for label in labels:
            if label.index >= self.next_index:
                self.next_index = label.index + 1


@dataclass(frozen=True)
class GateApplication:
    """
    One gate applied to `inputs`, producing `outputs`.
    """

    gate: str
    inputs: Tuple[Label, ...]
    outputs: Tuple[Label, ...]

    def rename(self, mapping: Mapping[Label, Label]) -> "GateApplication":
        """
        Apply a label renaming to both sides.
        """
        return GateApplication(
            self.gate,
            tuple(mapping.get(label, label) for label in self.inputs),
            tuple(mapping.get(label, label) for label in self.outputs),
        )

    def __str__(self) -> str:
        """Render as `g  in -> out`"""
        ins = ", ".join(str(label) for label in self.inputs)
        outs = ", ".join(str(label) for label in self.outputs)
        return f"{self.gate}  {ins or '()'} -> {outs or '()'}"


def check_connection(
    outputs: Mapping[Label, str],
    targets: List[Label],
    wires: List[str],
    interface: str,
) -> None:
    """
    Check that `targets` are distinct live wires of types `wires`, in the
    order the errors are reported by the evaluator: cloning, then liveness,
    then shape, then wire types.
    """
    seen: Set[Label] = set()
    for label in targets:
        if label in seen:
            raise CloningError(label)
        seen.add(label)
    for label in targets:
        if label not in outputs:
            raise UnboundLabel(label)
    if len(targets) != len(wires):
        raise ShapeMismatch(
            interface, "(" + ", ".join(str(k) for k in targets) + ")"
        )
    for label, wire in zip(targets, wires):
        if outputs[label] != wire:
            raise WireTypeMismatch(label, wire, outputs[label])


@dataclass(frozen=True)
class LabelledCircuit:
    """
    A circuit from `inputs` to `outputs`.
    """

    inputs: LabelContext
    gates: Tuple[GateApplication, ...]
    outputs: LabelContext

    @staticmethod
    def identity(context: LabelContext) -> "LabelledCircuit":
        """
        Identity circuit on `context`.
        """
        return LabelledCircuit(context, (), context)

    def size(self) -> int:
        """
        Number of gate applications.
        """
        return len(self.gates)

    def labels(self) -> Set[Label]:
        """
        Every label occurring in the circuit.
        """
        labels: Set[Label] = set(self.inputs) | set(self.outputs)
        for application in self.gates:
            labels.update(application.inputs)
            labels.update(application.outputs)
        return labels

    def append_gate(
        self,
        signature: Signature,
        gate: str,
        inputs: List[Label],
        allocator: LabelAllocator,
    ) -> Tuple["LabelledCircuit", List[Label]]:
        """
        Attach `gate` to the live wires `inputs`; returns the extended
        circuit and the gate's freshly allocated output labels.
        """
        decl = signature.gate(gate)
        check_connection(
            self.outputs, inputs, decl.input_wires(), str(decl.input)
        )
        outputs = [allocator.fresh() for _ in decl.output_wires()]
        live = self.outputs.without(inputs).union(
            dict(zip(outputs, decl.output_wires()))
        )
        application = GateApplication(gate, tuple(inputs), tuple(outputs))
        return (
            LabelledCircuit(self.inputs, self.gates + (application,), live),
            outputs,
        )

    def rename(self, mapping: Mapping[Label, Label]) -> "LabelledCircuit":
        """
        Apply a label renaming throughout.
        """
        return LabelledCircuit(
            self.inputs.rename(mapping),
            tuple(application.rename(mapping) for application in self.gates),
            self.outputs.rename(mapping),
        )

    def canonical_renaming(
        self, input_order: Optional[List[Label]] = None
    ) -> Dict[Label, Label]:
        """
        Renaming onto `L0, L1, ...`: inputs first in `input_order`, then
        gate outputs in gate-list order.

        Without an explicit order, inputs are numbered by first use;
        inputs no gate consumes follow, sorted by wire type and then by
        label.
        """
        order = (
            self.input_use_order() if input_order is None else input_order
        )
        mapping: Dict[Label, Label] = {}
        for label in order:
            mapping.setdefault(label, Label(len(mapping)))
        for application in self.gates:
            for label in application.outputs:
                mapping.setdefault(label, Label(len(mapping)))
        for label in sorted(self.outputs):
            mapping.setdefault(label, Label(len(mapping)))
        return mapping

    def input_use_order(self) -> List[Label]:
        """
        Inputs in order of consumption, unconsumed inputs last.
        """
        order: List[Label] = []
        for application in self.gates:
            for label in application.inputs:
                if label in self.inputs and label not in order:
                    order.append(label)
        idle = [label for label in self.inputs if label not in order]
        return order + sorted(idle, key=lambda k: (self.inputs[k], k))

    def canonicalize(self) -> "LabelledCircuit":
        """
        Canonical representative of the circuit's renaming class.
        """
        return self.rename(self.canonical_renaming())

    def problems(self, signature: Signature) -> List[str]:
        """
        Every violated invariant, empty for a valid circuit.
        """
        problems: List[str] = []
        live: Dict[Label, str] = dict(self.inputs)
        seen: Set[Label] = set(self.inputs)
        for position, application in enumerate(self.gates):
            where = f"gate {position} ({application})"
            try:
                decl = signature.gate(application.gate)
            except UnknownGate as e:
                problems.append(f"{where}: {e}")
                continue
            try:
                check_connection(
                    live,
                    list(application.inputs),
                    decl.input_wires(),
                    str(decl.input),
                )
            except (CloningError, UnboundLabel) as e:
                problems.append(f"{where}: {e}")
                continue
            except (ShapeMismatch, WireTypeMismatch) as e:
                problems.append(f"{where}: {e}")
            for label in application.inputs:
                live.pop(label, None)
            wires = decl.output_wires()
            if len(wires) != len(application.outputs):
                problems.append(f"{where}: wrong number of outputs")
            for label, wire in zip(application.outputs, wires):
                if label in seen:
                    problems.append(f"{where}: label {label} is not fresh")
                seen.add(label)
                live[label] = wire
        if LabelContext(live) != self.outputs:
            problems.append(
                f"declared outputs {self.outputs} differ from computed "
                + f"outputs {LabelContext(live)}"
            )
        return problems

    def validate(self, signature: Signature) -> "LabelledCircuit":
        """
        Raise `InvalidCircuit` unless the circuit is well formed.
        """
        problems = self.problems(signature)
        if problems:
            raise InvalidCircuit(problems)
        return self

    def is_valid(self, signature: Signature) -> bool:
        """
        True iff the circuit is well formed.
        """
        return not self.problems(signature)

    def extends(self, prefix: "LabelledCircuit") -> bool:
        """
        True iff this circuit is `prefix` followed by zero or more gates.
        """
        return (
            self.inputs == prefix.inputs
            and self.gates[: len(prefix.gates)] == prefix.gates
        )
