"""
Type errors and their machine-readable diagnostics.
"""
from dataclasses import dataclass
from typing import Any, Dict, Optional

from ..syntax import Label, Span, Type


@dataclass(kw_only=True, frozen=True)
class Diagnostic:
    """
    One reported problem with a source position.
    """

    severity: str
    message: str
    span: Optional[Span]
    code: str

    def to_json(self) -> Dict[str, Any]:
        """
        JSON record of the diagnostic.
        """
        return {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "span": None
            if self.span is None
            else {
                "line": self.span.line,
                "column": self.span.column,
                "length": self.span.length,
            },
        }

    def __str__(self) -> str:
        """Render as `line:column: severity[code]: message`"""
        where = "" if self.span is None else (
            f"{self.span.line}:{self.span.column}: "
        )
        return f"{where}{self.severity}[{self.code}]: {self.message}"


class TypeCheckError(Exception):
    """
    Base class of type errors. Subclasses set `code`.
    """

    code = "TypeError"
    span: Optional[Span]

    def __init__(self, *args, span: Optional[Span] = None):
        super().__init__(args)
        self.span = span

    def at(self, span: Optional[Span]) -> "TypeCheckError":
        """
        Attach `span` unless a more precise one is already present.
        """
        if self.span is None:
            self.span = span
        return self

    def diagnostic(self) -> Diagnostic:
        """
        Diagnostic record for this error.
        """
        return Diagnostic(
            severity="error",
            message=str(self),
            span=self.span,
            code=self.code,
        )


class UnboundVariable(TypeCheckError):
    """
    A variable used outside the scope of any binder for it.
    """

    code = "UnboundVariable"
    name: str

    def __init__(self, name: str, *args, span: Optional[Span] = None):
        super().__init__(*args, span=span)
        self.name = name

    def __str__(self):
        """Print exception string"""
        return f"unbound variable {self.name}"


class UnboundLabel(TypeCheckError):
    """
    A label that the label context does not declare.
    """

    code = "UnboundLabel"
    label: Label

    def __init__(self, label: Label, *args, span: Optional[Span] = None):
        super().__init__(*args, span=span)
        self.label = label

    def __str__(self):
        """Print exception string"""
        return f"unbound label {self.label}"


class LinearityViolation(TypeCheckError):
    """
    A linear variable or label used zero times or more than once.
    """

    code = "LinearityViolation"
    name: str
    uses: int

    def __init__(
        self, name: str, uses: int, *args, span: Optional[Span] = None
    ):
        super().__init__(*args, span=span)
        self.name = name
        self.uses = uses

    def __str__(self):
        """Print exception string"""
        if self.uses == 0:
            return f"linear resource {self.name} is never used"
        return f"linear resource {self.name} is used more than once"


class UnusedLabel(TypeCheckError):
    """
    A label of the context that the term never consumes.
    """

    code = "UnusedLabel"
    label: Label

    def __init__(self, label: Label, *args, span: Optional[Span] = None):
        super().__init__(*args, span=span)
        self.label = label

    def __str__(self):
        """Print exception string"""
        return f"label {self.label} is never used"


class TypeMismatch(TypeCheckError):
    """
    A term has a different type than its position requires.
    """

    code = "TypeMismatch"
    expected: Type | str
    found: Type | str

    def __init__(
        self,
        expected: Type | str,
        found: Type | str,
        *args,
        span: Optional[Span] = None,
    ):
        super().__init__(*args, span=span)
        self.expected = expected
        self.found = found

    def __str__(self):
        """Print exception string"""
        return f"expected {self.expected}, found {self.found}"


class NonParameterUnderLift(TypeCheckError):
    """
    A lifted term consumes a linear variable or a label.
    """

    code = "NonParameterUnderLift"
    name: str

    def __init__(self, name: str, *args, span: Optional[Span] = None):
        super().__init__(*args, span=span)
        self.name = name

    def __str__(self):
        """Print exception string"""
        return f"lifted term uses linear resource {self.name}"


class NotSimpleMType(TypeCheckError):
    """
    A circuit interface that is not built from wires, `I` and `*`.
    """

    code = "NotSimpleMType"
    type: Type

    def __init__(self, type: Type, *args, span: Optional[Span] = None):
        super().__init__(*args, span=span)
        self.type = type

    def __str__(self):
        """Print exception string"""
        return f"{self.type} is not a simple M-type"


class DuplicateLabelInTuple(TypeCheckError):
    """
    A label tuple mentions the same label twice.
    """

    code = "DuplicateLabelInTuple"
    label: Label | str

    def __init__(
        self, label: Label | str, *args, span: Optional[Span] = None
    ):
        super().__init__(*args, span=span)
        self.label = label

    def __str__(self):
        """Print exception string"""
        return f"label {self.label} occurs twice in a label tuple"


class InterfaceMismatch(TypeCheckError):
    """
    A circuit's interface differs from the label context it is checked
    against.
    """

    code = "InterfaceMismatch"
    detail: str

    def __init__(self, detail: str, *args, span: Optional[Span] = None):
        super().__init__(*args, span=span)
        self.detail = detail

    def __str__(self):
        """Print exception string"""
        return f"circuit interface mismatch: {self.detail}"
