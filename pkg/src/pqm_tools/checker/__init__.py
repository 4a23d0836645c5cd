"""
Linear type checking for terms, label tuples, configurations and programs.
"""

from .check import Checker, UsageReport, is_label_tuple_like
from .declarative import DeclarativeOracle, splits
from .diagnostics import (
    Diagnostic,
    DuplicateLabelInTuple,
    InterfaceMismatch,
    LinearityViolation,
    NonParameterUnderLift,
    NotSimpleMType,
    TypeCheckError,
    TypeMismatch,
    UnboundLabel,
    UnboundVariable,
    UnusedLabel,
)

__all__ = (
    "Checker",
    "DeclarativeOracle",
    "Diagnostic",
    "DuplicateLabelInTuple",
    "InterfaceMismatch",
    "LinearityViolation",
    "NonParameterUnderLift",
    "NotSimpleMType",
    "TypeCheckError",
    "TypeMismatch",
    "UnboundLabel",
    "UnboundVariable",
    "UnusedLabel",
    "UsageReport",
    "is_label_tuple_like",
    "splits",
)
