"""
JSON and text renderings of circuits.
"""
from typing import Any, Dict, List, Optional

from ..syntax import Label, LabelRef, Pair, Term, UnitV
from .boxed import BoxedCircuit
from .circuit import GateApplication, LabelledCircuit
from .context import LabelContext
from .errors import InvalidCircuit
from .signature import Signature


def context_to_json(context: LabelContext) -> Dict[str, str]:
    """
    `{"L0": "Qubit", ...}` in label order.
    """
    return {str(label): wire for label, wire in context.items()}


def circuit_to_json(circuit: LabelledCircuit) -> Dict[str, Any]:
    """
    JSON object for a labelled circuit.
    """
    return {
        "inputs": context_to_json(circuit.inputs),
        "gates": [
            {
                "g": application.gate,
                "in": [str(label) for label in application.inputs],
                "out": [str(label) for label in application.outputs],
            }
            for application in circuit.gates
        ],
        "outputs": context_to_json(circuit.outputs),
    }


def tuple_to_json(term: Term) -> Any:
    """
    Label tuples as nested lists: a label is its name, `()` is `[]` and a
    pair is a two-element list.
    """
    if isinstance(term, LabelRef):
        return str(term.label)
    if isinstance(term, UnitV):
        return []
    assert isinstance(term, Pair)
    return [tuple_to_json(term.first), tuple_to_json(term.second)]


def tuple_from_json(data: Any) -> Term:
    """
    Inverse of `tuple_to_json`.
    """
    if isinstance(data, str):
        return LabelRef(Label.parse(data))
    if isinstance(data, list) and not data:
        return UnitV()
    if isinstance(data, list) and len(data) == 2:
        return Pair(tuple_from_json(data[0]), tuple_from_json(data[1]))
    raise InvalidCircuit([f"not a label tuple: {data!r}"])


def boxed_to_json(boxed: BoxedCircuit) -> Dict[str, Any]:
    """
    JSON object for a boxed circuit, with its interface types.
    """
    return {
        "type": {
            "in": str(boxed.input_type()),
            "out": str(boxed.output_type()),
        },
        "in": tuple_to_json(boxed.in_tuple),
        "circuit": circuit_to_json(boxed.circuit),
        "out": tuple_to_json(boxed.out_tuple),
        "size": boxed.size(),
    }


def _context_from_json(data: Any, where: str) -> LabelContext:
    if not isinstance(data, dict):
        raise InvalidCircuit([f"{where} must be an object"])
    try:
        return LabelContext(data)
    except Label.InvalidLabel as e:
        raise InvalidCircuit([f"{where}: {e}"])


def circuit_from_json(
    data: Dict[str, Any], signature: Optional[Signature] = None
) -> LabelledCircuit:
    """
    Decode a labelled circuit, validating it against `signature` when one
    is given.
    """
    problems: List[str] = [
        f"missing field {key!r}"
        for key in ("inputs", "gates", "outputs")
        if key not in data
    ]
    if problems:
        raise InvalidCircuit(problems)
    gates: List[GateApplication] = []
    for position, entry in enumerate(data["gates"]):
        try:
            gates.append(
                GateApplication(
                    entry["g"],
                    tuple(Label.parse(k) for k in entry["in"]),
                    tuple(Label.parse(k) for k in entry["out"]),
                )
            )
        except (KeyError, TypeError, Label.InvalidLabel) as e:
            raise InvalidCircuit([f"gate {position}: malformed ({e})"])
    circuit = LabelledCircuit(
        _context_from_json(data["inputs"], "inputs"),
        tuple(gates),
        _context_from_json(data["outputs"], "outputs"),
    )
    if signature is not None:
        circuit.validate(signature)
    return circuit


def boxed_from_json(
    data: Dict[str, Any], signature: Optional[Signature] = None
) -> BoxedCircuit:
    """
    Decode a boxed circuit written by `boxed_to_json`.
    """
    try:
        in_tuple, out_tuple = data["in"], data["out"]
        circuit = data["circuit"]
    except KeyError as e:
        raise InvalidCircuit([f"missing field {e}"])
    boxed = BoxedCircuit(
        tuple_from_json(in_tuple),
        circuit_from_json(circuit, signature),
        tuple_from_json(out_tuple),
    )
    return boxed


def _context_line(name: str, context: LabelContext) -> str:
    wires = ", ".join(f"{label}:{wire}" for label, wire in context.items())
    return f"{name}: {wires}" if wires else f"{name}:"


def circuit_to_text(circuit: LabelledCircuit) -> str:
    """
    One line per gate, `g  in -> out`, between the interface lines.
    """
    lines = [_context_line("inputs", circuit.inputs)]
    lines.extend(str(application) for application in circuit.gates)
    lines.append(_context_line("outputs", circuit.outputs))
    return "\n".join(lines) + "\n"


def boxed_to_text(boxed: BoxedCircuit) -> str:
    """
    Text rendering of a boxed circuit, headed by its type and tuples.
    """
    header = [
        f"circuit : {boxed.circuit_type()}",
        f"in  = {boxed.in_tuple}",
        f"out = {boxed.out_tuple}",
        f"size = {boxed.size()}",
    ]
    return "\n".join(header) + "\n" + circuit_to_text(boxed.circuit)
