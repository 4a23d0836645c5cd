"""
Toolchain for a typed functional language that describes families of
quantum circuits: parsing, type checking, circuit construction by
evaluation, and executable checks of the type system's guarantees.
"""

from .builtins import (
    ConstantDecl,
    builtin_environment,
    constant_types,
    load_signature,
)
from .checker import Checker, DeclarativeOracle, Diagnostic, TypeCheckError
from .circuit import (
    BoxedCircuit,
    LabelAllocator,
    LabelContext,
    LabelledCircuit,
    Signature,
    default_signature,
)
from .encoder import JSONEncoder
from .evaluator import (
    Configuration,
    ErrorOutcome,
    Evaluator,
    FuelExhausted,
    ValueConfig,
    evaluate,
)
from .metatheory import GenSpec, PropertyReport, run_properties
from .parser import parse_program, parse_term, parse_type, pretty_term
from .syntax import Label, Term, Type

__all__ = (
    "BoxedCircuit",
    "Checker",
    "Configuration",
    "ConstantDecl",
    "DeclarativeOracle",
    "Diagnostic",
    "ErrorOutcome",
    "Evaluator",
    "FuelExhausted",
    "GenSpec",
    "JSONEncoder",
    "Label",
    "LabelAllocator",
    "LabelContext",
    "LabelledCircuit",
    "PropertyReport",
    "Signature",
    "Term",
    "Type",
    "TypeCheckError",
    "ValueConfig",
    "builtin_environment",
    "constant_types",
    "default_signature",
    "evaluate",
    "load_signature",
    "parse_program",
    "parse_term",
    "parse_type",
    "pretty_term",
    "run_properties",
)
