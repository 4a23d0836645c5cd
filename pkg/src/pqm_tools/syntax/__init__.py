"""
Abstract syntax of types and terms, labels, and structural operations.
"""

from .labels import Label
from .substitution import (
    alpha_equivalent,
    canonical_form,
    free_identifiers,
    free_labels,
    free_variables,
    fresh_name,
    rename_bound,
    rename_labels,
    substitute,
)
from .terms import (
    Abort,
    App,
    ApplyT,
    BoxedCirc,
    BoxT,
    Case,
    Cons,
    Const,
    DuplicateLabel,
    ForceT,
    LabelRef,
    Lam,
    Left,
    Let,
    LetPair,
    LiftT,
    NatLit,
    Nil,
    NotALabelTuple,
    Pair,
    Right,
    Seq,
    Span,
    Succ,
    Term,
    UnitV,
    Var,
    children,
    is_label_tuple,
    is_value,
    label_tuple,
    term_size,
    tuple_labels,
)
from .types import (
    BIT,
    BOOL,
    QUBIT,
    Bang,
    Circ,
    ListT,
    Lolli,
    NatT,
    Sum,
    Tensor,
    Type,
    TypeVar,
    Unit,
    WellFormednessError,
    WireType,
    Zero,
    has_type_vars,
    is_parameter_type,
    is_simple_m_type,
    is_state_type,
    match_type,
    substitute_type,
    wire_leaves,
    wire_names,
)

__all__ = (
    "Abort",
    "App",
    "ApplyT",
    "BIT",
    "BOOL",
    "Bang",
    "BoxT",
    "BoxedCirc",
    "Case",
    "Circ",
    "Cons",
    "Const",
    "DuplicateLabel",
    "ForceT",
    "Label",
    "LabelRef",
    "Lam",
    "Left",
    "Let",
    "LetPair",
    "LiftT",
    "ListT",
    "Lolli",
    "NatLit",
    "NatT",
    "Nil",
    "NotALabelTuple",
    "Pair",
    "QUBIT",
    "Right",
    "Seq",
    "Span",
    "Succ",
    "Sum",
    "Tensor",
    "Term",
    "Type",
    "TypeVar",
    "Unit",
    "UnitV",
    "Var",
    "WellFormednessError",
    "WireType",
    "Zero",
    "alpha_equivalent",
    "canonical_form",
    "children",
    "free_identifiers",
    "free_labels",
    "free_variables",
    "fresh_name",
    "has_type_vars",
    "is_label_tuple",
    "is_parameter_type",
    "is_simple_m_type",
    "is_state_type",
    "is_value",
    "label_tuple",
    "match_type",
    "rename_bound",
    "rename_labels",
    "substitute",
    "substitute_type",
    "term_size",
    "tuple_labels",
    "wire_leaves",
    "wire_names",
)
