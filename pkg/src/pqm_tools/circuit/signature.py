"""
Gate signatures: the wire types and gates of the circuit category that
programs generate circuits in.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from ..syntax import (
    BIT,
    QUBIT,
    Tensor,
    Type,
    Unit,
    is_simple_m_type,
    wire_leaves,
)
from .errors import SignatureError, UnknownGate


@dataclass(kw_only=True, frozen=True)
class GateDecl:
    """
    A gate with its typed interface. An invertible gate without an explicit
    `inverse` is its own inverse.
    """

    name: str
    input: Type
    output: Type
    invertible: bool = False
    inverse: Optional[str] = None

    def input_wires(self) -> List[str]:
        """
        Wire types of the gate's inputs, left to right.
        """
        return list(wire_leaves(self.input))

    def output_wires(self) -> List[str]:
        """
        Wire types of the gate's outputs, left to right.
        """
        return list(wire_leaves(self.output))


@dataclass(kw_only=True, frozen=True)
class Signature:
    """
    Wire types and gates of a circuit category.
    """

    wire_types: FrozenSet[str]
    gates: Tuple[GateDecl, ...] = ()

    def __post_init__(self) -> None:
        """Validate gate declarations against each other"""
        table: Dict[str, GateDecl] = {}
        for gate in self.gates:
            if gate.name in table:
                raise SignatureError(f"gate {gate.name} declared twice")
            if gate.name in self.wire_types:
                raise SignatureError(
                    f"{gate.name} is both a wire type and a gate"
                )
            table[gate.name] = gate
            for side in (gate.input, gate.output):
                if not is_simple_m_type(side):
                    raise SignatureError(
                        f"interface {side} of gate {gate.name} is not a "
                        + "simple M-type"
                    )
                for wire in wire_leaves(side):
                    if wire not in self.wire_types:
                        raise SignatureError(
                            f"gate {gate.name} uses undeclared wire type "
                            + wire
                        )
        for gate in self.gates:
            if gate.inverse is not None and not gate.invertible:
                raise SignatureError(
                    f"gate {gate.name} names an inverse but is not "
                    + "invertible"
                )
            if not gate.invertible:
                continue
            inverse = table.get(gate.inverse or gate.name)
            if inverse is None:
                raise SignatureError(
                    f"inverse {gate.inverse} of gate {gate.name} is not "
                    + "declared"
                )
            if inverse.input != gate.output or inverse.output != gate.input:
                raise SignatureError(
                    f"inverse {inverse.name} of gate {gate.name} does not "
                    + "have the swapped interface"
                )
            if (inverse.inverse or inverse.name) != gate.name:
                raise SignatureError(
                    f"inverse of {inverse.name} is not {gate.name}"
                )
        object.__setattr__(self, "_table", table)

    def gate(self, name: str) -> GateDecl:
        """
        Declaration of gate `name`.
        """
        table: Dict[str, GateDecl] = getattr(self, "_table")
        if name not in table:
            raise UnknownGate(name)
        return table[name]

    def has_gate(self, name: str) -> bool:
        """
        True iff gate `name` is declared.
        """
        return name in getattr(self, "_table")

    def inverse_of(self, name: str) -> GateDecl:
        """
        Declaration of the inverse of gate `name`.
        """
        gate = self.gate(name)
        return self.gate(gate.inverse or gate.name)

    def gate_names(self) -> List[str]:
        """
        Gate names in declaration order.
        """
        return [gate.name for gate in self.gates]


def default_signature() -> Signature:
    """
    Bits and qubits with a small universal-looking gate set.
    """
    qubits = Tensor(QUBIT, QUBIT)
    return Signature(
        wire_types=frozenset({"Bit", "Qubit"}),
        gates=(
            GateDecl(name="H", input=QUBIT, output=QUBIT, invertible=True),
            GateDecl(name="X", input=QUBIT, output=QUBIT, invertible=True),
            GateDecl(
                name="CNOT", input=qubits, output=qubits, invertible=True
            ),
            GateDecl(name="init0", input=Unit(), output=QUBIT),
            GateDecl(name="init1", input=Unit(), output=QUBIT),
            GateDecl(name="meas", input=QUBIT, output=BIT),
            GateDecl(name="discard", input=BIT, output=Unit()),
        ),
    )
