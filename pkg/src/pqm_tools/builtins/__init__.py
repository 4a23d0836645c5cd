"""
Built-in constants and signature files.
"""

from .environment import (
    BadArgument,
    ConstantDecl,
    ConstantKind,
    DeltaContext,
    builtin_environment,
    constant_types,
    gate_delta,
    meta_constants,
)
from .signature_file import (
    load_signature,
    signature_from_json,
    signature_to_json,
)

__all__ = (
    "BadArgument",
    "ConstantDecl",
    "ConstantKind",
    "DeltaContext",
    "builtin_environment",
    "constant_types",
    "gate_delta",
    "load_signature",
    "meta_constants",
    "signature_from_json",
    "signature_to_json",
)
