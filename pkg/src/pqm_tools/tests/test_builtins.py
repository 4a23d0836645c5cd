"""
Test suite for `pqm_tools.builtins` module.
"""
import json
from typing import Optional

import pytest

from ..builtins import (
    ConstantKind,
    builtin_environment,
    constant_types,
    load_signature,
    signature_from_json,
    signature_to_json,
)
from ..circuit import (
    GateDecl,
    LabelContext,
    LabelledCircuit,
    Signature,
    SignatureError,
    default_signature,
)
from ..evaluator import Configuration, ErrorKind, Evaluator, ValueConfig
from ..parser import parse_term, parse_type
from ..syntax import QUBIT, Label, LabelRef, Lolli, NatLit

SIGNATURE = default_signature()
CONSTANTS = frozenset(constant_types(builtin_environment(SIGNATURE)))


def _run(text: str, circuit: Optional[LabelledCircuit] = None):
    circuit = circuit or LabelledCircuit.identity(LabelContext())
    term = parse_term(text, CONSTANTS, SIGNATURE.wire_types)
    return Evaluator(SIGNATURE, fuel=10**5).eval(
        Configuration(circuit=circuit, term=term)
    )


def test_gate_constants():
    """
    Each gate becomes a constant of type `input -o output`.
    """
    environment = builtin_environment(SIGNATURE)
    assert environment["H"].schema == Lolli(QUBIT, QUBIT)
    assert environment["H"].kind is ConstantKind.GATE
    assert environment["CNOT"].schema == parse_type(
        "Qubit * Qubit -o Qubit * Qubit"
    )
    assert environment["init0"].schema == parse_type("I -o Qubit")
    assert environment["discard"].schema == parse_type("Bit -o I")
    assert environment["foldNat"].arity == 3
    assert environment["size"].kind is ConstantKind.META


def test_empty_signature():
    """
    Without gates only the meta-operations and eliminators remain.
    """
    empty = Signature(wire_types=frozenset({"Qubit"}))
    assert set(builtin_environment(empty)) == {
        "size",
        "invert",
        "foldNat",
        "foldList",
    }


def test_gate_name_clash():
    """
    A gate may not shadow a built-in constant.
    """
    clash = Signature(
        wire_types=frozenset({"Qubit"}),
        gates=(GateDecl(name="size", input=QUBIT, output=QUBIT),),
    )
    with pytest.raises(SignatureError):
        builtin_environment(clash)


def test_fold_nat_zero_iterations():
    """
    `foldNat f a 0` returns `a` and appends nothing.
    """
    inputs = LabelContext({Label(0): "Qubit"})
    start = LabelledCircuit.identity(inputs)
    outcome = _run("foldNat (lift (fun q : Qubit . H q)) #L0 0", start)
    assert isinstance(outcome, ValueConfig)
    assert outcome.value == LabelRef(Label(0))
    assert outcome.circuit == start


@pytest.mark.parametrize("count", [1, 2, 5])
def test_fold_nat_iterates(count):
    """
    `foldNat f a k` forces the step `k` times.
    """
    inputs = LabelContext({Label(0): "Qubit"})
    outcome = _run(
        f"foldNat (lift (fun q : Qubit . H q)) #L0 {count}",
        LabelledCircuit.identity(inputs),
    )
    assert isinstance(outcome, ValueConfig)
    assert outcome.circuit.size() == count
    assert [g.gate for g in outcome.circuit.gates] == ["H"] * count
    assert outcome.value == LabelRef(Label(count))


def test_fold_nat_arithmetic():
    """
    Iterated successor adds.
    """
    outcome = _run("foldNat (lift (fun k : Nat . succ k)) 4 3")
    assert isinstance(outcome, ValueConfig)
    assert outcome.value == NatLit(7)


def test_fold_list():
    """
    `foldList` threads the accumulator left to right.
    """
    outcome = _run(
        "foldList (lift (fun p : Nat * Nat . let (acc, x) = p in "
        "foldNat (lift (fun k : Nat . succ k)) acc x)) 0 "
        "cons(1, cons(2, cons(3, nil[Nat])))"
    )
    assert isinstance(outcome, ValueConfig)
    assert outcome.value == NatLit(6)
    empty = _run("foldList (lift (fun p : Nat * Nat . 0)) 5 nil[Nat]")
    assert empty.value == NatLit(5)


def test_size_and_invert():
    """
    Meta-operations on boxed circuits.
    """
    size = _run("size (box[Qubit] (lift (fun q : Qubit . X (H q))))")
    assert size.value == NatLit(2)
    inverse = _run(
        "size (invert (box[Qubit] (lift (fun q : Qubit . X (H q)))))"
    )
    assert inverse.value == NatLit(2)
    measured = _run("invert (box[Qubit] (lift meas))")
    assert measured.kind is ErrorKind.NOT_INVERTIBLE


def test_bad_arguments():
    """
    Constants applied to values of the wrong form fail at run time.
    """
    assert _run("size 3").kind is ErrorKind.RUNTIME_TYPE_ERROR
    assert _run("foldNat 1 2 3").kind is ErrorKind.RUNTIME_TYPE_ERROR
    assert _run("H 3").kind is ErrorKind.RUNTIME_TYPE_ERROR


def test_signature_json_round_trip():
    """
    A signature survives its JSON document.
    """
    document = signature_to_json(SIGNATURE)
    assert document["wire_types"] == ["Bit", "Qubit"]
    assert signature_from_json(json.loads(json.dumps(document))) == SIGNATURE


def test_load_signature(tmp_path):
    """
    Signature files are read from disk.
    """
    path = tmp_path / "sig.json"
    path.write_text(
        json.dumps(
            {
                "wire_types": ["Qutrit"],
                "gates": [
                    {
                        "name": "shift",
                        "in": "Qutrit",
                        "out": "Qutrit",
                        "invertible": True,
                        "inverse": "unshift",
                    },
                    {
                        "name": "unshift",
                        "in": "Qutrit",
                        "out": "Qutrit",
                        "invertible": True,
                        "inverse": "shift",
                    },
                ],
            }
        )
    )
    signature = load_signature(str(path))
    assert signature.gate_names() == ["shift", "unshift"]
    assert signature.inverse_of("shift").name == "unshift"
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    with pytest.raises(SignatureError):
        load_signature(str(broken))
    with pytest.raises(OSError):
        load_signature(str(tmp_path / "missing.json"))


@pytest.mark.parametrize(
    "document",
    [
        [],
        {"gates": []},
        {"wire_types": "Qubit"},
        {"wire_types": ["Qubit"], "gates": [{"in": "Qubit"}]},
        {
            "wire_types": ["Qubit"],
            "gates": [{"name": "F", "in": "Qubit -o Qubit", "out": "Qubit"}],
        },
        {
            "wire_types": ["Qubit"],
            "gates": [{"name": "F", "in": "Bit", "out": "Qubit"}],
        },
        {
            "wire_types": ["Qubit"],
            "gates": [{"name": "F", "in": 3, "out": "Qubit"}],
        },
        {
            "wire_types": ["Qubit"],
            "gates": [{"name": "F", "in": "Qubit *", "out": "Qubit"}],
        },
    ],
)
def test_malformed_signatures(document):
    """
    Malformed signature documents raise `SignatureError`.
    """
    with pytest.raises(SignatureError):
        signature_from_json(document)
