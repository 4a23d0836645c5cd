"""
Test suite for `pqm_tools.evaluator` module.
"""
import io
import json
from pathlib import Path

import pytest

from ..builtins import builtin_environment, constant_types
from ..circuit import (
    BoxedCircuit,
    LabelAllocator,
    LabelContext,
    LabelledCircuit,
    default_signature,
    freshlabels,
)
from ..evaluator import (
    Configuration,
    ErrorKind,
    ErrorOutcome,
    Evaluator,
    FuelExhausted,
    ValueConfig,
    evaluate,
    print_traces,
    write_traces,
)
from ..parser import parse_program, parse_term
from ..syntax import (
    QUBIT,
    App,
    BoxedCirc,
    BoxT,
    Const,
    Label,
    LabelRef,
    Lam,
    LiftT,
    NatLit,
    UnitV,
    Var,
    is_value,
)

PROGRAMS = Path(__file__).parents[3] / "programs"
SIGNATURE = default_signature()
CONSTANTS = frozenset(constant_types(builtin_environment(SIGNATURE)))


def _parse(text: str):
    return parse_term(text, CONSTANTS, SIGNATURE.wire_types)


def test_box_example():
    """
    Boxing a lifted Hadamard gives one gate from a fresh input.
    """
    term = BoxT(QUBIT, LiftT(Lam("x", QUBIT, App(Const("H"), Var("x")))))
    outcome = Evaluator(SIGNATURE).run(term)
    assert isinstance(outcome, ValueConfig)
    assert outcome.circuit.size() == 0
    assert isinstance(outcome.value, BoxedCirc)
    boxed = outcome.value.boxed
    allocator = LabelAllocator()
    context, inputs = freshlabels(QUBIT, allocator)
    expected, (out,) = LabelledCircuit.identity(context).append_gate(
        SIGNATURE, "H", [Label(0)], allocator
    )
    assert boxed.equiv(BoxedCircuit(inputs, expected, LabelRef(out)))
    assert boxed.canonicalize() == BoxedCircuit(
        LabelRef(Label(0)), expected, LabelRef(Label(1))
    )


def test_gate_on_input_label():
    """
    A gate applied to a live input returns the next fresh label.
    """
    inputs = LabelContext({Label(0): "Qubit"})
    outcome = evaluate(
        Configuration(
            circuit=LabelledCircuit.identity(inputs),
            term=App(Const("H"), LabelRef(Label(0))),
        )
    )
    assert isinstance(outcome, ValueConfig)
    assert outcome.value == LabelRef(Label(1))
    assert outcome.circuit.outputs == LabelContext({Label(1): "Qubit"})
    assert outcome.circuit.inputs == inputs


@pytest.mark.parametrize(
    "text",
    [
        "()",
        "lift (fun x : Qubit . H x)",
        "fun x : Qubit . H x",
        "3",
        "nil[Qubit]",
        "cons(1, cons(2, nil[Nat]))",
        "left[I, Nat] ()",
    ],
)
def test_values_evaluate_to_themselves(text):
    """
    Values are returned unchanged and build no circuit.
    """
    term = _parse(text)
    outcome = Evaluator(SIGNATURE).run(term)
    assert isinstance(outcome, ValueConfig)
    assert outcome.value == term
    assert outcome.circuit.size() == 0


def test_box_restores_outer_circuit():
    """
    `box` builds its circuit apart from the one under construction.
    """
    inputs = LabelContext({Label(0): "Qubit"})
    term = _parse(
        "let q = H #L0 in (q, box[Qubit] (lift (fun x : Qubit . X x)))"
    )
    outcome = Evaluator(SIGNATURE).eval(
        Configuration(circuit=LabelledCircuit.identity(inputs), term=term)
    )
    assert isinstance(outcome, ValueConfig)
    assert [g.gate for g in outcome.circuit.gates] == ["H"]
    boxed = outcome.value.second.boxed
    assert [g.gate for g in boxed.circuit.gates] == ["X"]
    assert not boxed.circuit.labels() & outcome.circuit.labels()


def test_apply_grafts_boxed_circuit():
    """
    `apply` appends the boxed gates onto live wires.
    """
    inputs = LabelContext({Label(0): "Qubit", Label(1): "Qubit"})
    term = _parse(
        "apply(box[Qubit * Qubit] (lift (fun p : Qubit * Qubit . "
        "let (a, b) = p in CNOT (H a, b))), (#L1, #L0))"
    )
    outcome = Evaluator(SIGNATURE).eval(
        Configuration(circuit=LabelledCircuit.identity(inputs), term=term)
    )
    assert isinstance(outcome, ValueConfig)
    assert outcome.circuit.size() == 2
    assert outcome.circuit.is_valid(SIGNATURE)
    assert outcome.circuit.gates[0].inputs == (Label(1),)
    assert outcome.circuit.gates[1].inputs[1] == Label(0)


def test_let_pair_is_simultaneous():
    """
    Both components are substituted at once, even when they mention the
    other binder's name.
    """
    outcome = Evaluator(SIGNATURE).run(
        _parse("let (a, b) = (fun b : Nat . b, 2) in a b")
    )
    assert isinstance(outcome, ValueConfig)
    assert outcome.value == _parse("2")


@pytest.mark.parametrize(
    "name,kind",
    [
        ("apply_unit", ErrorKind.RUNTIME_TYPE_ERROR),
        ("unpair_unit", ErrorKind.RUNTIME_TYPE_ERROR),
        ("force_unit", ErrorKind.RUNTIME_TYPE_ERROR),
        ("case_unit", ErrorKind.RUNTIME_TYPE_ERROR),
        ("free_variable", ErrorKind.UNBOUND_VARIABLE),
        ("unknown_gate", ErrorKind.UNBOUND_VARIABLE),
        ("gate_on_missing_label", ErrorKind.UNBOUND_LABEL),
        ("gate_on_dead_label", ErrorKind.UNBOUND_LABEL),
        ("reuse_consumed_wire", ErrorKind.UNBOUND_LABEL),
        ("cnot_same_wire", ErrorKind.CLONING_ERROR),
        ("apply_cloned_wires", ErrorKind.CLONING_ERROR),
        ("invert_measurement", ErrorKind.NOT_INVERTIBLE),
    ],
)
def test_unchecked_programs(name, kind):
    """
    Programs that skip type checking stop with the expected error class.
    """
    text = (PROGRAMS / "unchecked" / f"{name}.pqm").read_text()
    program = parse_program(text, CONSTANTS, SIGNATURE.wire_types)
    outcome = Evaluator(SIGNATURE, fuel=10**5).run(program.desugar("main"))
    assert isinstance(outcome, ErrorOutcome)
    assert outcome.kind is kind
    assert outcome.trace
    assert str(outcome).startswith(kind.value)


def test_unchecked_corpus_size():
    """
    The unchecked corpus holds at least ten programs.
    """
    names = {p.stem for p in (PROGRAMS / "unchecked").glob("*.pqm")}
    assert len(names) >= 10


def test_fuel_exhaustion():
    """
    A diverging untyped term runs out of fuel.
    """
    omega = "(fun x : Qubit . x x) (fun x : Qubit . x x)"
    outcome = Evaluator(SIGNATURE, fuel=1000).run(_parse(omega))
    assert isinstance(outcome, FuelExhausted)
    assert outcome.steps == 1000
    long = _parse("foldNat (lift (fun k : Nat . succ k)) 0 100000")
    assert isinstance(
        Evaluator(SIGNATURE, fuel=500).run(long), FuelExhausted
    )


def test_closed_values_are_not_re_evaluated():
    """
    Growing a list by folding costs a bounded number of steps per element.
    """
    term = _parse(
        "foldNat (lift (fun l : List Nat . cons(0, l))) nil[Nat] 5000"
    )
    outcome = Evaluator(SIGNATURE, fuel=100_000).run(term)
    assert isinstance(outcome, ValueConfig)
    assert str(outcome.value).count("cons(0, ") == 5000


def test_succ_steps_to_a_literal():
    """
    `succ` of a literal is not a value; it evaluates to the next literal.
    """
    term = _parse("succ 2")
    assert not is_value(term)
    outcome = Evaluator(SIGNATURE).run(term)
    assert isinstance(outcome, ValueConfig)
    assert outcome.value == NatLit(3)
    assert is_value(outcome.value)


def test_evaluator_is_reusable():
    """
    Each evaluation starts from its own configuration.
    """
    evaluator = Evaluator(SIGNATURE)
    first = evaluator.run(_parse("H (init0 ())"))
    second = evaluator.run(_parse("H (init0 ())"))
    assert first == second
    assert first.circuit.size() == 2


def test_traces():
    """
    One record per rule application, written as JSON lines.
    """
    evaluator = Evaluator(SIGNATURE, trace=True)
    evaluator.reset_traces()
    assert evaluator.get_traces() is None
    evaluator.run(_parse("H (init0 ())"))
    traces = evaluator.get_traces()
    assert traces is not None
    assert traces[0]["rule"] == "App"
    assert any(record["rule"] == "delta" for record in traces)
    out = io.StringIO()
    write_traces(traces, out)
    lines = out.getvalue().splitlines()
    assert len(lines) == len(traces)
    assert json.loads(lines[0]) == traces[0]
    silent = Evaluator(SIGNATURE)
    silent.run(UnitV())
    assert silent.get_traces() is None


def test_print_traces():
    """
    Readable trace printing, one block per step.
    """
    out = io.StringIO()
    print_traces(None, out)
    assert "--traces" in out.getvalue()
    out = io.StringIO()
    print_traces([{"step": 1, "rule": "UnitV"}], out)
    printed = out.getvalue()
    assert printed.startswith("Step 1 (UnitV):\n")
    assert "'rule': 'UnitV'" in printed
