"""
Test suite for `pqm_tools.metatheory` module.
"""
import json
import random
from typing import Dict

import pytest

from ..builtins import builtin_environment, constant_types
from ..checker import Checker
from ..circuit import (
    LabelAllocator,
    LabelContext,
    LabelledCircuit,
    default_signature,
)
from ..circuit import boxed as boxed_module
from ..encoder import JSONEncoder
from ..evaluator import Configuration, Evaluator, ValueConfig
from ..metatheory import (
    Counterexample,
    GenerationFailure,
    GenSpec,
    PropertyReport,
    PropertySuite,
    generate_configuration,
    generate_well_typed,
    random_circuit,
    run_properties,
    unary_paths,
)
from ..parser import parse_term
from ..syntax import QUBIT, Label, Tensor, Unit, UnitV, Zero

SIGNATURE = default_signature()
CONSTANTS = constant_types(builtin_environment(SIGNATURE))


def test_generate_unit_at_depth_one():
    """
    The only closed value of `I` at depth one is `()`.
    """
    spec = GenSpec(max_depth=1)
    assert generate_well_typed(spec, {}, {}, Unit()) == UnitV()


def test_generate_uninhabited():
    """
    Nothing inhabits the empty type.
    """
    with pytest.raises(GenerationFailure) as e:
        generate_well_typed(GenSpec(), {}, {}, Zero())
    assert e.value.type == Zero()
    assert "0" in str(e.value)


def test_gen_spec_depth():
    """
    A depth budget below one is rejected.
    """
    with pytest.raises(ValueError):
        GenSpec(max_depth=0)


def test_trial_seeds_are_reproducible():
    """
    The same master seed yields the same trial seeds and configurations.
    """
    spec = GenSpec(seed=11)
    assert spec.trial_seeds(20) == GenSpec(seed=11).trial_seeds(20)
    assert spec.trial_seeds(20) != GenSpec(seed=12).trial_seeds(20)
    seed = spec.trial_seeds(1)[0]
    try:
        first = generate_configuration(spec, seed)
    except GenerationFailure:
        pytest.skip("seed does not generate")
    assert generate_configuration(spec, seed) == first


def test_unary_paths():
    """
    Shortest single-wire gate chains between wire types.
    """
    paths = unary_paths(SIGNATURE)
    assert paths[("", "Qubit")] == ["init0"]
    assert paths[("Qubit", "Bit")] == ["meas"]
    assert paths[("Qubit", "")] == ["meas", "discard"]
    assert paths[("Bit", "")] == ["discard"]
    assert ("Bit", "Qubit") not in paths


@pytest.mark.parametrize("seed", range(50))
def test_generated_configurations_type_check(seed):
    """
    Generated configurations are accepted by the algorithmic checker.
    """
    spec = GenSpec(seed=seed)
    try:
        config = generate_configuration(spec, seed)
    except GenerationFailure:
        return
    checker = Checker(CONSTANTS, SIGNATURE)
    checker.check_configuration(
        config.inputs,
        config.circuit,
        config.term,
        config.type,
        config.reserved,
    )
    assert 1 <= config.depth <= spec.max_depth


def test_random_circuit():
    """
    Random circuits are valid and respect the gate budget.
    """
    rng = random.Random(3)
    for _ in range(50):
        allocator = LabelAllocator()
        inputs = LabelContext({allocator.fresh(): "Qubit"})
        circuit = random_circuit(SIGNATURE, rng, inputs, 4, allocator)
        assert circuit.is_valid(SIGNATURE)
        assert circuit.size() <= 4
        assert circuit.inputs == inputs


def test_properties_hold():
    """
    Every property holds on a thousand generated configurations.
    """
    reports = run_properties(GenSpec(), trials=1000, fuel=10**6)
    by_name = {report.name: report for report in reports}
    for name in ("error-freeness", "termination", "subject-reduction"):
        assert by_name[name].trials > 0
    for report in reports:
        assert report.passed(), json.dumps(report.to_json(), indent=2)


def test_box_apply():
    """
    `apply` of a closed circuit term matches the circuit `box` gives.
    """
    spec = GenSpec(seed=5)
    reports = PropertySuite(spec).run(200)
    (report,) = [r for r in reports if r.name == "box-apply"]
    assert report.trials > 0
    assert report.passed(), str(report.to_json())


def test_zero_trials():
    """
    An empty run reports every property with no trials.
    """
    reports = run_properties(GenSpec(), trials=0)
    assert reports
    for report in reports:
        assert report.trials == 0
        assert report.passed()


def _graft_without_freshness(
    circuit, fixed, allocator
) -> Dict[Label, Label]:
    mapping = dict(fixed)
    for label in circuit.labels():
        mapping.setdefault(label, label)
    return mapping


def test_graft_without_freshness_is_invalid(monkeypatch):
    """
    Applying the same boxed circuit twice without fresh internal labels
    reuses a label.
    """
    monkeypatch.setattr(
        boxed_module, "graft_renaming", _graft_without_freshness
    )
    constants = frozenset(CONSTANTS)
    term = parse_term(
        "let c = box[Qubit] (lift (fun q : Qubit . X (H q))) in "
        "apply(c, apply(c, #L0))",
        constants,
        SIGNATURE.wire_types,
    )
    inputs = LabelContext({Label(0): "Qubit"})
    outcome = Evaluator(SIGNATURE).eval(
        Configuration(circuit=LabelledCircuit.identity(inputs), term=term)
    )
    assert not (
        isinstance(outcome, ValueConfig)
        and outcome.circuit.is_valid(SIGNATURE)
    )


def test_mutation_is_caught(monkeypatch):
    """
    The property suite finds a counterexample once grafting stops
    renaming internal labels apart.
    """
    monkeypatch.setattr(
        boxed_module, "graft_renaming", _graft_without_freshness
    )
    spec = GenSpec(seed=1, targets=(QUBIT, Tensor(QUBIT, QUBIT)))
    reports = PropertySuite(spec).run(300)
    failures = [f for report in reports for f in report.failures]
    assert failures
    assert all(f.term for f in failures)
    assert any(
        report.name in ("circuit-validity", "error-freeness")
        and not report.passed()
        for report in reports
    )


def test_report_json():
    """
    Reports and counterexamples encode to JSON.
    """
    counterexample = Counterexample(
        seed=4, depth=2, term="()", type="I", detail="broken"
    )
    report = PropertyReport(
        name="locality",
        trials=3,
        failures=[counterexample],
        elapsed=0.12345,
    )
    assert not report.passed()
    document = json.loads(json.dumps(report, cls=JSONEncoder))
    assert document == {
        "name": "locality",
        "trials": 3,
        "failures": [
            {
                "seed": 4,
                "depth": 2,
                "term": "()",
                "type": "I",
                "detail": "broken",
            }
        ],
        "elapsed": 0.123,
    }


def test_encoder():
    """
    Toolchain results encode with the package encoder.
    """
    outcome = Evaluator(SIGNATURE).run(
        parse_term(
            "H (init0 ())", frozenset(CONSTANTS), SIGNATURE.wire_types
        )
    )
    document = json.loads(json.dumps(outcome, cls=JSONEncoder))
    assert set(document) == {"circuit", "value", "steps"}
    assert document["steps"] == outcome.steps
    assert json.loads(json.dumps(Label(3), cls=JSONEncoder)) == "L3"
    assert json.loads(json.dumps(QUBIT, cls=JSONEncoder)) == "Qubit"
    with pytest.raises(TypeError):
        json.dumps(object(), cls=JSONEncoder)
