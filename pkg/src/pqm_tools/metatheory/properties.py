"""
Executable checks of the metatheory on generated configurations.

Each trial generates a configuration, evaluates it once and runs every
property against the outcome. A failing trial is shrunk by regenerating
from the same seed at smaller depths, keeping the smallest configuration
that still fails.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..builtins import builtin_environment, constant_types
from ..checker import Checker, TypeCheckError
from ..circuit import (
    BoxedCircuit,
    CircuitError,
    LabelAllocator,
    LabelContext,
    LabelledCircuit,
    freshlabels,
)
from ..evaluator import (
    Configuration,
    ErrorOutcome,
    EvalOutcome,
    Evaluator,
    FuelExhausted,
    ValueConfig,
)
from ..syntax import (
    ApplyT,
    BoxedCirc,
    Circ,
    Term,
    alpha_equivalent,
    canonical_form,
    free_labels,
    is_value,
    rename_bound,
    rename_labels,
)
from .generator import (
    GeneratedConfiguration,
    GenerationFailure,
    GenSpec,
    generate_configuration,
)

DEFAULT_FUEL = 10**6


class NotApplicable(Exception):
    """
    The property says nothing about this trial.
    """


@dataclass(kw_only=True, frozen=True)
class Counterexample:
    """
    A failing trial, re-runnable from `seed` and `depth`.
    """

    seed: int
    depth: int
    term: str
    type: str
    detail: str

    def to_json(self) -> Dict[str, Any]:
        """
        JSON record of the counterexample.
        """
        return {
            "seed": self.seed,
            "depth": self.depth,
            "term": self.term,
            "type": self.type,
            "detail": self.detail,
        }


@dataclass(kw_only=True)
class PropertyReport:
    """
    Statistics of one property over a run.
    """

    name: str
    trials: int = 0
    failures: List[Counterexample] = field(default_factory=list)
    elapsed: float = 0.0

    def passed(self) -> bool:
        """
        True iff no trial failed.
        """
        return not self.failures

    def to_json(self) -> Dict[str, Any]:
        """
        JSON record of the report.
        """
        return {
            "name": self.name,
            "trials": self.trials,
            "failures": [f.to_json() for f in self.failures],
            "elapsed": round(self.elapsed, 3),
        }


Check = Callable[[GeneratedConfiguration, EvalOutcome], None]


class PropertyFailure(Exception):
    """
    A property does not hold on a trial.
    """

    detail: str

    def __init__(self, detail: str, *args):
        super().__init__(args)
        self.detail = detail

    def __str__(self):
        """Print exception string"""
        return self.detail


def _value(outcome: EvalOutcome) -> ValueConfig:
    if not isinstance(outcome, ValueConfig):
        raise NotApplicable()
    return outcome


def _appended(
    prefix: LabelledCircuit, result: ValueConfig
) -> Tuple[LabelledCircuit, Term]:
    """
    Gates appended after `prefix` and the value, both canonically
    relabelled. Only meaningful for terms that mention no labels.
    """
    gates = result.circuit.gates[len(prefix.gates) :]
    created = {label for gate in gates for label in gate.outputs}
    suffix = LabelledCircuit(
        LabelContext(),
        gates,
        LabelContext(
            (k, w) for k, w in result.circuit.outputs.items() if k in created
        ),
    )
    mapping = suffix.canonical_renaming([])
    return suffix.rename(mapping), canonical_form(
        rename_labels(result.value, mapping)
    )


class PropertySuite:
    """
    The properties checked on every trial, by name.
    """

    spec: GenSpec
    fuel: int
    checks: Dict[str, Check]

    def __init__(self, spec: GenSpec, fuel: int = DEFAULT_FUEL):
        self.spec = spec
        self.fuel = fuel
        self.log = logging.getLogger(__name__)
        self.environment = builtin_environment(spec.signature)
        self.checker = Checker(
            constant_types(self.environment), spec.signature
        )
        self.checks = {
            "generator-soundness": self.generator_soundness,
            "error-freeness": self.error_freeness,
            "termination": self.termination,
            "subject-reduction": self.subject_reduction,
            "prefix-monotonicity": self.prefix_monotonicity,
            "circuit-validity": self.circuit_validity,
            "locality": self.locality,
            "alpha-invariance": self.alpha_invariance,
            "box-apply": self.box_apply,
        }

    def evaluator(self) -> Evaluator:
        """
        Fresh evaluator with the suite's signature and budget.
        """
        return Evaluator(self.spec.signature, self.environment, self.fuel)

    def evaluate(self, config: GeneratedConfiguration) -> EvalOutcome:
        """
        Evaluate a generated configuration.
        """
        return self.evaluator().eval(
            Configuration(circuit=config.circuit, term=config.term)
        )

    # properties

    def generator_soundness(
        self, config: GeneratedConfiguration, outcome: EvalOutcome
    ) -> None:
        """
        The generated configuration is well typed.
        """
        try:
            self.checker.check_configuration(
                config.inputs,
                config.circuit,
                config.term,
                config.type,
                config.reserved,
            )
        except TypeCheckError as e:
            raise PropertyFailure(f"{e.code}: {e}")

    def error_freeness(
        self, config: GeneratedConfiguration, outcome: EvalOutcome
    ) -> None:
        """
        Evaluation never reports a run-time error.
        """
        if isinstance(outcome, ErrorOutcome):
            raise PropertyFailure(str(outcome))

    def termination(
        self, config: GeneratedConfiguration, outcome: EvalOutcome
    ) -> None:
        """
        Evaluation finishes within the fuel budget.
        """
        if isinstance(outcome, FuelExhausted):
            raise PropertyFailure(str(outcome))

    def subject_reduction(
        self, config: GeneratedConfiguration, outcome: EvalOutcome
    ) -> None:
        """
        The result configuration has the type of the initial one.
        """
        result = _value(outcome)
        if not is_value(result.value):
            raise PropertyFailure(f"{result.value} is not a value")
        try:
            self.checker.check_configuration(
                config.inputs,
                result.circuit,
                result.value,
                config.type,
                config.reserved,
            )
        except TypeCheckError as e:
            raise PropertyFailure(f"{e.code}: {e}")

    def prefix_monotonicity(
        self, config: GeneratedConfiguration, outcome: EvalOutcome
    ) -> None:
        """
        Evaluation only appends gates.
        """
        if not _value(outcome).circuit.extends(config.circuit):
            raise PropertyFailure("initial circuit is not a prefix")

    def circuit_validity(
        self, config: GeneratedConfiguration, outcome: EvalOutcome
    ) -> None:
        """
        The result circuit is valid; in particular every label produced by
        a gate is fresh.
        """
        problems = _value(outcome).circuit.problems(self.spec.signature)
        if problems:
            raise PropertyFailure("; ".join(problems))

    def locality(
        self, config: GeneratedConfiguration, outcome: EvalOutcome
    ) -> None:
        """
        A term mentioning no labels appends the same gates and returns the
        same value whatever circuit it runs against.
        """
        if free_labels(config.term):
            raise NotApplicable()
        result = _value(outcome)
        alone = _value(self.evaluator().run(config.term))
        empty = LabelledCircuit.identity(LabelContext())
        if _appended(config.circuit, result) != _appended(empty, alone):
            raise PropertyFailure("result depends on the initial circuit")

    def alpha_invariance(
        self, config: GeneratedConfiguration, outcome: EvalOutcome
    ) -> None:
        """
        Renaming bound variables changes neither circuit nor value.
        """
        result = _value(outcome)
        renamed = rename_bound(config.term, lambda name: f"{name}r")
        other = _value(
            self.evaluator().eval(
                Configuration(circuit=config.circuit, term=renamed)
            )
        )
        if other.circuit != result.circuit:
            raise PropertyFailure("renaming changed the circuit")
        if not alpha_equivalent(other.value, result.value):
            raise PropertyFailure("renaming changed the value")

    def box_apply(
        self, config: GeneratedConfiguration, outcome: EvalOutcome
    ) -> None:
        """
        Applying a closed circuit-typed term to fresh wires appends exactly
        the gates of the boxed circuit it evaluates to.
        """
        result = _value(outcome)
        if (
            not isinstance(config.type, Circ)
            or config.labels()
            or result.circuit.size() != config.circuit.size()
            or not isinstance(result.value, BoxedCirc)
        ):
            raise NotApplicable()
        allocator = LabelAllocator()
        context, inputs = freshlabels(config.type.inp, allocator)
        applied = _value(
            self.evaluator().eval(
                Configuration(
                    circuit=LabelledCircuit.identity(context),
                    term=ApplyT(config.term, inputs),
                ),
                allocator,
            )
        )
        try:
            rebuilt = BoxedCircuit(inputs, applied.circuit, applied.value)
        except CircuitError as e:
            raise PropertyFailure(f"applied circuit is malformed: {e}")
        if not rebuilt.equiv(result.value.boxed):
            raise PropertyFailure(
                f"apply gave {rebuilt}, box gave {result.value.boxed}"
            )

    # running

    def judge(
        self, config: GeneratedConfiguration
    ) -> Dict[str, Optional[str]]:
        """
        Verdict of every applicable property on one configuration: None
        for a pass, the failure detail otherwise.
        """
        outcome = self.evaluate(config)
        verdicts: Dict[str, Optional[str]] = {}
        for name, check in self.checks.items():
            try:
                check(config, outcome)
            except NotApplicable:
                continue
            except PropertyFailure as e:
                verdicts[name] = e.detail
                continue
            verdicts[name] = None
        return verdicts

    def shrink(
        self, name: str, config: GeneratedConfiguration, detail: str
    ) -> Counterexample:
        """
        Smallest-depth configuration from the same seed that still fails
        property `name`.
        """
        for depth in range(1, config.depth):
            try:
                smaller = generate_configuration(self.spec, config.seed, depth)
            except GenerationFailure:
                continue
            verdict = self.judge(smaller).get(name)
            if verdict is not None:
                config, detail = smaller, verdict
                break
        return Counterexample(
            seed=config.seed,
            depth=config.depth,
            term=str(config.term),
            type=str(config.type),
            detail=detail,
        )

    def run(self, trials: int) -> List[PropertyReport]:
        """
        Run `trials` trials and report on every property.
        """
        reports = {name: PropertyReport(name=name) for name in self.checks}
        for seed in self.spec.trial_seeds(trials):
            try:
                config = generate_configuration(self.spec, seed)
            except GenerationFailure as e:
                self.log.debug(f"trial {seed} skipped: {e}")
                continue
            except TypeCheckError as e:
                report = reports["generator-soundness"]
                report.trials += 1
                report.failures.append(
                    Counterexample(
                        seed=seed,
                        depth=0,
                        term="",
                        type="",
                        detail=f"{e.code}: {e}",
                    )
                )
                continue
            start = time.perf_counter()
            verdicts = self.judge(config)
            elapsed = time.perf_counter() - start
            for name, verdict in verdicts.items():
                report = reports[name]
                report.trials += 1
                report.elapsed += elapsed / max(len(verdicts), 1)
                if verdict is not None:
                    self.log.info(f"{name} failed on seed {seed}: {verdict}")
                    report.failures.append(
                        self.shrink(name, config, verdict)
                    )
        return list(reports.values())


def run_properties(
    spec: GenSpec, trials: int = 1000, fuel: int = DEFAULT_FUEL
) -> List[PropertyReport]:
    """
    Run the whole property suite.
    """
    return PropertySuite(spec, fuel).run(trials)
