"""
Errors raised while building or transforming labelled circuits.
"""
from typing import List

from ..syntax import Label


class CircuitError(Exception):
    """
    Base class of all circuit construction errors.
    """


class UnboundLabel(CircuitError):
    """
    A gate or boxed circuit was attached to a wire that is not an output of
    the circuit.
    """

    label: Label

    def __init__(self, label: Label, *args):
        super().__init__(args)
        self.label = label

    def __str__(self):
        """Print exception string"""
        return f"label {self.label} is not a live output of the circuit"


class CloningError(CircuitError):
    """
    The same wire was supplied twice to a single gate or boxed circuit.
    """

    label: Label

    def __init__(self, label: Label, *args):
        super().__init__(args)
        self.label = label

    def __str__(self):
        """Print exception string"""
        return f"label {self.label} supplied more than once"


class WireTypeMismatch(CircuitError):
    """
    A wire of one type was connected to an endpoint of another type.
    """

    label: Label
    want: str
    got: str

    def __init__(self, label: Label, want: str, got: str, *args):
        super().__init__(args)
        self.label = label
        self.want = want
        self.got = got

    def __str__(self):
        """Print exception string"""
        return (
            f"wire {self.label} has type {self.got}, expected {self.want}"
        )


class ShapeMismatch(CircuitError):
    """
    The tuple of wires supplied does not have the shape of the interface
    it is connected to.
    """

    want: str
    got: str

    def __init__(self, want: str, got: str, *args):
        super().__init__(args)
        self.want = want
        self.got = got

    def __str__(self):
        """Print exception string"""
        return f"wire tuple {self.got} does not match interface {self.want}"


class NotInvertible(CircuitError):
    """
    Inversion was requested for a circuit containing a gate without an
    inverse.
    """

    gate: str

    def __init__(self, gate: str, *args):
        super().__init__(args)
        self.gate = gate

    def __str__(self):
        """Print exception string"""
        return f"gate {self.gate} has no inverse"


class UnknownGate(CircuitError):
    """
    A gate name that the active signature does not declare.
    """

    gate: str

    def __init__(self, gate: str, *args):
        super().__init__(args)
        self.gate = gate

    def __str__(self):
        """Print exception string"""
        return f"gate {self.gate} is not declared in the signature"


class InvalidCircuit(CircuitError):
    """
    A circuit violates its structural invariants.
    """

    problems: List[str]

    def __init__(self, problems: List[str], *args):
        super().__init__(args)
        self.problems = problems

    def __str__(self):
        """Print exception string"""
        return "invalid circuit: " + "; ".join(self.problems)


class SignatureError(Exception):
    """
    A gate signature is malformed.
    """

    reason: str

    def __init__(self, reason: str, *args):
        super().__init__(args)
        self.reason = reason

    def __str__(self):
        """Print exception string"""
        return f"malformed signature: {self.reason}"
