"""
Labelled circuits over a pluggable gate signature.
"""

from .boxed import (
    BoxedCircuit,
    append,
    equiv,
    freshlabels,
    graft_renaming,
    invert,
    same_shape,
    tuple_type,
)
from .circuit import (
    GateApplication,
    LabelAllocator,
    LabelledCircuit,
    check_connection,
)
from .context import LabelContext
from .encoding import (
    boxed_from_json,
    boxed_to_json,
    boxed_to_text,
    circuit_from_json,
    circuit_to_json,
    circuit_to_text,
    tuple_from_json,
    tuple_to_json,
)
from .errors import (
    CircuitError,
    CloningError,
    InvalidCircuit,
    NotInvertible,
    ShapeMismatch,
    SignatureError,
    UnboundLabel,
    UnknownGate,
    WireTypeMismatch,
)
from .signature import GateDecl, Signature, default_signature

__all__ = (
    "BoxedCircuit",
    "CircuitError",
    "CloningError",
    "GateApplication",
    "GateDecl",
    "InvalidCircuit",
    "LabelAllocator",
    "LabelContext",
    "LabelledCircuit",
    "NotInvertible",
    "ShapeMismatch",
    "Signature",
    "SignatureError",
    "UnboundLabel",
    "UnknownGate",
    "WireTypeMismatch",
    "append",
    "boxed_from_json",
    "boxed_to_json",
    "boxed_to_text",
    "check_connection",
    "circuit_from_json",
    "circuit_to_json",
    "circuit_to_text",
    "default_signature",
    "equiv",
    "freshlabels",
    "graft_renaming",
    "invert",
    "same_shape",
    "tuple_from_json",
    "tuple_type",
)
