"""
Signature files: JSON documents declaring wire types and gates.

    {
        "wire_types": ["Bit", "Qubit"],
        "gates": [
            {"name": "H", "in": "Qubit", "out": "Qubit", "invertible": true},
            {"name": "meas", "in": "Qubit", "out": "Bit"}
        ]
    }
"""
import json
from typing import Any, Dict, List

from ..circuit import GateDecl, Signature, SignatureError
from ..parser import SyntaxFailure, parse_type
from ..syntax import Type, WellFormednessError, is_simple_m_type


def _interface(gate: str, side: str, text: Any, wires: List[str]) -> Type:
    if not isinstance(text, str):
        raise SignatureError(f"gate {gate}: '{side}' must be a type string")
    try:
        parsed = parse_type(text, frozenset(wires))
    except (SyntaxFailure, WellFormednessError) as e:
        raise SignatureError(f"gate {gate}: bad '{side}' type: {e}")
    if not is_simple_m_type(parsed):
        raise SignatureError(
            f"gate {gate}: '{side}' type {parsed} is not a simple M-type"
        )
    return parsed


def signature_from_json(data: Any) -> Signature:
    """
    Build a signature from its decoded JSON document.
    """
    if not isinstance(data, dict):
        raise SignatureError("signature must be a JSON object")
    wires = data.get("wire_types")
    if not isinstance(wires, list) or not all(
        isinstance(w, str) for w in wires
    ):
        raise SignatureError("'wire_types' must be a list of names")
    gates: List[GateDecl] = []
    for entry in data.get("gates", []):
        if not isinstance(entry, dict) or not isinstance(
            entry.get("name"), str
        ):
            raise SignatureError(f"malformed gate entry {entry!r}")
        name = entry["name"]
        gates.append(
            GateDecl(
                name=name,
                input=_interface(name, "in", entry.get("in"), wires),
                output=_interface(name, "out", entry.get("out"), wires),
                invertible=bool(entry.get("invertible", False)),
                inverse=entry.get("inverse"),
            )
        )
    return Signature(wire_types=frozenset(wires), gates=tuple(gates))


def signature_to_json(signature: Signature) -> Dict[str, Any]:
    """
    JSON document describing `signature`.
    """
    gates: List[Dict[str, Any]] = []
    for gate in signature.gates:
        entry: Dict[str, Any] = {
            "name": gate.name,
            "in": str(gate.input),
            "out": str(gate.output),
            "invertible": gate.invertible,
        }
        if gate.inverse is not None:
            entry["inverse"] = gate.inverse
        gates.append(entry)
    return {"wire_types": sorted(signature.wire_types), "gates": gates}


def load_signature(path: str) -> Signature:
    """
    Read a signature file. I/O errors propagate unchanged.
    """
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise SignatureError(f"{path} is not valid JSON: {e}")
        except UnicodeDecodeError as e:
            raise SignatureError(f"{path} is not UTF-8 text: {e.reason}")
    return signature_from_json(data)
