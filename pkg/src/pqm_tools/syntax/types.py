"""
Types of the circuit description language.

Wire types name objects of the underlying circuit category, `I` and `*`
build circuit interfaces, and everything else is the usual linear
lambda-calculus type structure.
"""
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List


class WellFormednessError(Exception):
    """
    A type was built or parsed that violates a structural restriction, such
    as a non-simple argument to `Circ` or an undeclared wire type.
    """

    type_text: str
    reason: str
    span: Any

    def __init__(self, type_text: str, reason: str, *args, span: Any = None):
        super().__init__(args)
        self.type_text = type_text
        self.reason = reason
        self.span = span

    def __str__(self):
        """Print exception string"""
        return f"ill-formed type {self.type_text}: {self.reason}"


@dataclass(frozen=True)
class Type:
    """
    Base class of all type constructors.
    """

    def __str__(self) -> str:
        """Render using the surface syntax"""
        from ..parser.pretty import pretty_type

        return pretty_type(self)


@dataclass(frozen=True)
class WireType(Type):
    """
    A wire type such as `Qubit` or `Bit`.
    """

    name: str


@dataclass(frozen=True)
class Zero(Type):
    """
    The empty type.
    """


@dataclass(frozen=True)
class Sum(Type):
    """
    `A + B`.
    """

    left: Type
    right: Type


@dataclass(frozen=True)
class Unit(Type):
    """
    The tensor unit `I`.
    """


@dataclass(frozen=True)
class Tensor(Type):
    """
    `A * B`.
    """

    left: Type
    right: Type


@dataclass(frozen=True)
class Lolli(Type):
    """
    Linear function type `A -o B`.
    """

    arg: Type
    result: Type


@dataclass(frozen=True)
class Bang(Type):
    """
    `!A`, the type of duplicable thunks.
    """

    body: Type


@dataclass(frozen=True)
class NatT(Type):
    """
    Natural numbers.
    """


@dataclass(frozen=True)
class ListT(Type):
    """
    `List A`.
    """

    elem: Type


@dataclass(frozen=True)
class TypeVar(Type):
    """
    Schema variable. Only ever appears inside the type schemas of built-in
    constants; `simple` marks variables that range over simple M-types.
    """

    name: str
    simple: bool = False


@dataclass(frozen=True)
class Circ(Type):
    """
    `Circ(T, U)`, the type of boxed circuits from `T` to `U`.
    """

    inp: Type
    out: Type

    def __post_init__(self) -> None:
        """Both interfaces must be simple M-types"""
        for side in (self.inp, self.out):
            if not is_simple_m_type(side):
                raise WellFormednessError(
                    f"Circ({self.inp}, {self.out})",
                    f"{side} is not a simple M-type",
                )


def is_simple_m_type(t: Type) -> bool:
    """
    True iff `t` is built from wire types, `I` and `*` only.
    """
    if isinstance(t, (WireType, Unit)):
        return True
    if isinstance(t, Tensor):
        return is_simple_m_type(t.left) and is_simple_m_type(t.right)
    if isinstance(t, TypeVar):
        return t.simple
    return False


def is_parameter_type(t: Type) -> bool:
    """
    True iff every value of `t` is known at circuit generation time, so
    that variables of type `t` may be used any number of times.
    """
    if isinstance(t, (Zero, Unit, Bang, NatT, Circ)):
        return True
    if isinstance(t, (Sum, Tensor)):
        return is_parameter_type(t.left) and is_parameter_type(t.right)
    if isinstance(t, ListT):
        return is_parameter_type(t.elem)
    return False


def wire_leaves(t: Type) -> Iterator[str]:
    """
    Wire type names of a simple M-type, left to right.
    """
    if isinstance(t, WireType):
        yield t.name
    elif isinstance(t, Tensor):
        yield from wire_leaves(t.left)
        yield from wire_leaves(t.right)
    elif not isinstance(t, Unit):
        raise WellFormednessError(str(t), "not a simple M-type")


def wire_names(t: Type) -> List[str]:
    """
    All wire type names mentioned anywhere in `t`.
    """
    if isinstance(t, WireType):
        return [t.name]
    if isinstance(t, (Sum, Tensor)):
        return wire_names(t.left) + wire_names(t.right)
    if isinstance(t, Lolli):
        return wire_names(t.arg) + wire_names(t.result)
    if isinstance(t, Bang):
        return wire_names(t.body)
    if isinstance(t, ListT):
        return wire_names(t.elem)
    if isinstance(t, Circ):
        return wire_names(t.inp) + wire_names(t.out)
    return []


def is_state_type(t: Type) -> bool:
    """
    True iff values of `t` are plain arrangements of wires: wire types,
    `I`, `*`, `+` and `List` over such types.
    """
    if isinstance(t, (WireType, Unit)):
        return True
    if isinstance(t, (Sum, Tensor)):
        return is_state_type(t.left) and is_state_type(t.right)
    if isinstance(t, ListT):
        return is_state_type(t.elem)
    return False


def substitute_type(t: Type, subst: Dict[str, Type]) -> Type:
    """
    Replace schema variables in `t`.
    """
    if isinstance(t, TypeVar):
        return subst.get(t.name, t)
    if isinstance(t, Sum):
        return Sum(
            substitute_type(t.left, subst), substitute_type(t.right, subst)
        )
    if isinstance(t, Tensor):
        return Tensor(
            substitute_type(t.left, subst), substitute_type(t.right, subst)
        )
    if isinstance(t, Lolli):
        return Lolli(
            substitute_type(t.arg, subst), substitute_type(t.result, subst)
        )
    if isinstance(t, Bang):
        return Bang(substitute_type(t.body, subst))
    if isinstance(t, ListT):
        return ListT(substitute_type(t.elem, subst))
    if isinstance(t, Circ):
        return Circ(
            substitute_type(t.inp, subst), substitute_type(t.out, subst)
        )
    return t


def match_type(pattern: Type, actual: Type, subst: Dict[str, Type]) -> bool:
    """
    One-way matching of a schema against a concrete type, extending
    `subst` in place. Returns False on mismatch.
    """
    if isinstance(pattern, TypeVar):
        if pattern.name in subst:
            return subst[pattern.name] == actual
        if pattern.simple and not is_simple_m_type(actual):
            return False
        subst[pattern.name] = actual
        return True
    if type(pattern) is not type(actual):
        return False
    if isinstance(pattern, (Sum, Tensor)):
        assert isinstance(actual, (Sum, Tensor))
        return match_type(pattern.left, actual.left, subst) and match_type(
            pattern.right, actual.right, subst
        )
    if isinstance(pattern, Lolli):
        assert isinstance(actual, Lolli)
        return match_type(pattern.arg, actual.arg, subst) and match_type(
            pattern.result, actual.result, subst
        )
    if isinstance(pattern, Bang):
        assert isinstance(actual, Bang)
        return match_type(pattern.body, actual.body, subst)
    if isinstance(pattern, ListT):
        assert isinstance(actual, ListT)
        return match_type(pattern.elem, actual.elem, subst)
    if isinstance(pattern, Circ):
        assert isinstance(actual, Circ)
        return match_type(pattern.inp, actual.inp, subst) and match_type(
            pattern.out, actual.out, subst
        )
    return pattern == actual


def has_type_vars(t: Type) -> bool:
    """
    True iff `t` still mentions schema variables.
    """
    if isinstance(t, TypeVar):
        return True
    if isinstance(t, (Sum, Tensor)):
        return has_type_vars(t.left) or has_type_vars(t.right)
    if isinstance(t, Lolli):
        return has_type_vars(t.arg) or has_type_vars(t.result)
    if isinstance(t, Bang):
        return has_type_vars(t.body)
    if isinstance(t, ListT):
        return has_type_vars(t.elem)
    if isinstance(t, Circ):
        return has_type_vars(t.inp) or has_type_vars(t.out)
    return False


QUBIT = WireType("Qubit")
BIT = WireType("Bit")
BOOL = Sum(Unit(), Unit())
