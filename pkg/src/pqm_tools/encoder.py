"""
JSON encoding of toolchain results.
"""
import json

from .builtins import signature_to_json
from .checker import Diagnostic
from .circuit import (
    BoxedCircuit,
    LabelContext,
    LabelledCircuit,
    Signature,
    boxed_to_json,
    circuit_to_json,
    tuple_to_json,
)
from .evaluator import ErrorOutcome, FuelExhausted, ValueConfig
from .metatheory import Counterexample, PropertyReport
from .syntax import BoxedCirc, Label, Term, Type, is_label_tuple


class JSONEncoder(json.JSONEncoder):
    """
    Custom JSON encoder for `pqm_tools` types.
    """

    def default(self, obj):
        """
        Encodes types defined in this package using basic python
        facilities.
        """
        if isinstance(obj, LabelledCircuit):
            return circuit_to_json(obj)
        elif isinstance(obj, BoxedCircuit):
            return boxed_to_json(obj)
        elif isinstance(obj, LabelContext):
            return {str(label): wire for label, wire in obj.items()}
        elif isinstance(obj, Signature):
            return signature_to_json(obj)
        elif isinstance(obj, ValueConfig):
            return {
                "circuit": obj.circuit,
                "value": obj.value,
                "steps": obj.steps,
            }
        elif isinstance(obj, ErrorOutcome):
            return {
                "error": obj.kind.value,
                "detail": obj.detail,
                "trace": list(obj.trace),
                "steps": obj.steps,
            }
        elif isinstance(obj, FuelExhausted):
            return {"error": "FuelExhausted", "steps": obj.steps}
        elif isinstance(obj, (Diagnostic, PropertyReport, Counterexample)):
            return obj.to_json()
        elif isinstance(obj, BoxedCirc):
            return obj.boxed
        elif isinstance(obj, Term):
            if is_label_tuple(obj):
                return tuple_to_json(obj)
            return str(obj)
        elif isinstance(obj, (Label, Type)):
            return str(obj)
        return super().default(obj)
