"""
Configurations and the results of evaluating them.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple, Union

from ..circuit import (
    CircuitError,
    CloningError,
    LabelledCircuit,
    NotInvertible,
    UnboundLabel,
)
from ..syntax import Term


class ErrorKind(Enum):
    """
    Classes of run-time error.
    """

    RUNTIME_TYPE_ERROR = "RuntimeTypeError"
    UNBOUND_VARIABLE = "UnboundVariable"
    UNBOUND_LABEL = "UnboundLabel"
    CLONING_ERROR = "CloningError"
    NOT_INVERTIBLE = "NotInvertible"

    @staticmethod
    def of_circuit_error(error: CircuitError) -> "ErrorKind":
        """
        Run-time error class of a failed circuit operation.
        """
        if isinstance(error, CloningError):
            return ErrorKind.CLONING_ERROR
        if isinstance(error, UnboundLabel):
            return ErrorKind.UNBOUND_LABEL
        if isinstance(error, NotInvertible):
            return ErrorKind.NOT_INVERTIBLE
        return ErrorKind.RUNTIME_TYPE_ERROR


@dataclass(kw_only=True, frozen=True)
class Configuration:
    """
    The circuit built so far and the term still to evaluate.
    """

    circuit: LabelledCircuit
    term: Term


@dataclass(kw_only=True, frozen=True)
class ValueConfig:
    """
    Successful evaluation: the final circuit and the value.
    """

    circuit: LabelledCircuit
    value: Term
    steps: int = field(default=0, compare=False)


@dataclass(kw_only=True, frozen=True)
class ErrorOutcome:
    """
    Evaluation stopped with a run-time error. `trace` lists the rules
    active when it happened, outermost first.
    """

    kind: ErrorKind
    detail: str
    trace: Tuple[str, ...] = ()
    steps: int = field(default=0, compare=False)

    def __str__(self) -> str:
        """Render as `Kind: detail`"""
        return f"{self.kind.value}: {self.detail}"


@dataclass(kw_only=True, frozen=True)
class FuelExhausted:
    """
    Evaluation ran out of its step budget.
    """

    steps: int

    def __str__(self) -> str:
        """Render the exhausted budget"""
        return f"fuel exhausted after {self.steps} steps"


EvalOutcome = Union[ValueConfig, ErrorOutcome, FuelExhausted]


class EvaluationError(Exception):
    """
    Raised inside the evaluator when a rule cannot apply.
    """

    kind: ErrorKind
    detail: str

    def __init__(self, kind: ErrorKind, detail: str, *args):
        super().__init__(args)
        self.kind = kind
        self.detail = detail

    def __str__(self):
        """Print exception string"""
        return f"{self.kind.value}: {self.detail}"


class OutOfFuel(Exception):
    """
    Raised inside the evaluator when the step budget is spent.
    """

    steps: int

    def __init__(self, steps: int, *args):
        super().__init__(args)
        self.steps = steps

    def __str__(self):
        """Print exception string"""
        return f"out of fuel after {self.steps} steps"
