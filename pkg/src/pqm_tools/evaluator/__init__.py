"""
Big-step evaluator for configurations `(circuit, term)`.
"""

from .machine import Evaluator, evaluate
from .outcome import (
    Configuration,
    ErrorKind,
    ErrorOutcome,
    EvalOutcome,
    EvaluationError,
    FuelExhausted,
    OutOfFuel,
    ValueConfig,
)
from .trace import print_traces, write_traces

__all__ = (
    "Configuration",
    "ErrorKind",
    "ErrorOutcome",
    "EvalOutcome",
    "EvaluationError",
    "Evaluator",
    "FuelExhausted",
    "OutOfFuel",
    "ValueConfig",
    "evaluate",
    "print_traces",
    "write_traces",
)
