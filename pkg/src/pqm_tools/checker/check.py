"""
Algorithmic type checker.

The whole context is passed down and every rule reports the linear
resources (linear variables and labels) it consumed. Binary rules require
the reports of their premises to be disjoint, binders require their
variable to be consumed when it is linear, and the root requires every
linear resource of the context to be consumed. Variables of parameter
type are shared freely.
"""
from dataclasses import dataclass
from typing import (
    Dict,
    FrozenSet,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from ..circuit import (
    CircuitError,
    LabelledCircuit,
    Signature,
    tuple_type,
)
from ..parser.program import SourceProgram
from ..syntax import (
    Abort,
    App,
    ApplyT,
    Bang,
    BoxedCirc,
    BoxT,
    Case,
    Circ,
    Cons,
    Const,
    ForceT,
    Label,
    LabelRef,
    Lam,
    Left,
    Let,
    LetPair,
    LiftT,
    ListT,
    Lolli,
    NatLit,
    NatT,
    Nil,
    Pair,
    Right,
    Seq,
    Succ,
    Sum,
    Tensor,
    Term,
    Type,
    Unit,
    UnitV,
    Var,
    WireType,
    Zero,
    free_variables,
    has_type_vars,
    is_parameter_type,
    is_simple_m_type,
    match_type,
    substitute_type,
)
from .diagnostics import (
    DuplicateLabelInTuple,
    InterfaceMismatch,
    LinearityViolation,
    NonParameterUnderLift,
    NotSimpleMType,
    TypeMismatch,
    UnboundLabel,
    UnboundVariable,
    UnusedLabel,
)

Resource = Union[str, Label]
Usage = FrozenSet[Resource]

NOTHING: Usage = frozenset()


@dataclass(kw_only=True, frozen=True)
class UsageReport:
    """
    Linear variables and labels a checked term consumes.
    """

    used_linear_vars: FrozenSet[str]
    used_labels: FrozenSet[Label]


def _report(usage: Usage) -> UsageReport:
    return UsageReport(
        used_linear_vars=frozenset(r for r in usage if isinstance(r, str)),
        used_labels=frozenset(r for r in usage if isinstance(r, Label)),
    )


def _spine(term: Term) -> Tuple[Term, List[Term]]:
    """
    Head and arguments of an application spine. Arguments already held by
    a partially applied constant come first.
    """
    args: List[Term] = []
    while isinstance(term, App):
        args.append(term.arg)
        term = term.fun
    args.reverse()
    if isinstance(term, Const) and term.args:
        return Const(term.name, span=term.span), list(term.args) + args
    return term, args


class Checker:
    """
    Type checker for a fixed constant environment. `constants` maps each
    constant to its (possibly schematic) type; `signature`, when given, is
    used to validate boxed circuit values.
    """

    constants: Mapping[str, Type]
    signature: Optional[Signature]

    def __init__(
        self,
        constants: Mapping[str, Type],
        signature: Optional[Signature] = None,
    ):
        self.constants = constants
        self.signature = signature

    # entry points

    def check(
        self,
        gamma: Mapping[str, Type],
        labels: Mapping[Label, str],
        term: Term,
        expected: Type,
    ) -> UsageReport:
        """
        Decide `gamma; labels |- term : expected`, requiring every linear
        variable and every label to be used exactly once.
        """
        usage = self._check(dict(gamma), dict(labels), term, expected)
        self._exhaustive(gamma, labels, usage, term)
        return _report(usage)

    def synthesize(
        self,
        gamma: Mapping[str, Type],
        labels: Mapping[Label, str],
        term: Term,
    ) -> Tuple[Type, UsageReport]:
        """
        The unique type of `term` under the contexts, with the same
        exactly-once requirement as `check`.
        """
        found, usage = self._synth(dict(gamma), dict(labels), term)
        self._exhaustive(gamma, labels, usage, term)
        return found, _report(usage)

    def check_label_tuple(
        self, labels: Mapping[Label, str], term: Term, shape: Type
    ) -> None:
        """
        `labels |- term : shape` for a label tuple `term` and a simple
        M-type `shape`, with `term` mentioning exactly the labels of
        `labels`.
        """
        if not is_simple_m_type(shape):
            raise NotSimpleMType(shape, span=term.span)
        seen: List[Label] = []

        def walk(t: Term, s: Type) -> None:
            if isinstance(t, LabelRef):
                if t.label in seen:
                    raise DuplicateLabelInTuple(t.label, span=t.span)
                seen.append(t.label)
                if t.label not in labels:
                    raise UnboundLabel(t.label, span=t.span)
                if WireType(labels[t.label]) != s:
                    raise TypeMismatch(
                        s, WireType(labels[t.label]), span=t.span
                    )
            elif isinstance(t, UnitV) and isinstance(s, Unit):
                pass
            elif isinstance(t, Pair) and isinstance(s, Tensor):
                walk(t.first, s.left)
                walk(t.second, s.right)
            else:
                raise TypeMismatch(s, f"label tuple {t}", span=t.span)

        walk(term, shape)
        for label in labels:
            if label not in seen:
                raise UnusedLabel(label, span=term.span)

    def check_configuration(
        self,
        inputs: Mapping[Label, str],
        circuit: LabelledCircuit,
        term: Term,
        expected: Type,
        reserved: Mapping[Label, str],
    ) -> UsageReport:
        """
        `inputs |- (circuit, term) : expected; reserved`: the circuit runs
        from `inputs` to `reserved` plus the labels `term` consumes.
        """
        if dict(circuit.inputs) != dict(inputs):
            raise InterfaceMismatch(
                f"circuit inputs {circuit.inputs} differ from "
                + "{"
                + ", ".join(f"{k}:{w}" for k, w in sorted(inputs.items()))
                + "}"
            )
        for label, wire in reserved.items():
            if circuit.outputs.get(label) != wire:
                raise InterfaceMismatch(
                    f"reserved output {label}:{wire} is not an output of "
                    + "the circuit"
                )
        remaining = circuit.outputs.without(reserved)
        return self.check({}, dict(remaining), term, expected)

    def check_program(self, program: SourceProgram) -> Dict[str, Type]:
        """
        Check every definition against its declared type, with the earlier
        definitions it mentions in scope. Returns the declared types.
        """
        declared: Dict[str, Type] = {}
        for definition in program.definitions:
            mentioned = free_variables(definition.body)
            gamma = {
                name: declared[name] for name in mentioned if name in declared
            }
            self.check(gamma, {}, definition.body, definition.declared_type)
            declared[definition.name] = definition.declared_type
        return declared

    def check_entry(
        self, program: SourceProgram, entry: Optional[str] = None
    ) -> Type:
        """
        Check the definitions `entry` depends on, and that each linear
        definition among them is referenced exactly once. Returns the
        entry's declared type.
        """
        definitions = program.reachable(entry)
        self.check_program(
            SourceProgram(definitions=definitions, entry=entry)
        )
        names = {definition.name for definition in definitions}
        uses = {name: 0 for name in names}
        uses[definitions[-1].name] = 1
        for definition in definitions:
            for name in free_variables(definition.body) & names:
                uses[name] += 1
        for definition in definitions:
            linear = not is_parameter_type(definition.declared_type)
            if linear and uses[definition.name] != 1:
                raise LinearityViolation(
                    definition.name,
                    uses[definition.name],
                    span=definition.span,
                )
        return definitions[-1].declared_type

    # internals

    def _exhaustive(
        self,
        gamma: Mapping[str, Type],
        labels: Mapping[Label, str],
        usage: Usage,
        term: Term,
    ) -> None:
        for name, declared in gamma.items():
            if not is_parameter_type(declared) and name not in usage:
                raise LinearityViolation(name, 0, span=term.span)
        for label in labels:
            if label not in usage:
                raise UnusedLabel(label, span=term.span)

    def _disjoint(self, term: Term, *usages: Usage) -> Usage:
        total: Usage = NOTHING
        for usage in usages:
            shared = total & usage
            if shared:
                resource = min(shared, key=str)
                if isinstance(term, Pair) and is_label_tuple_like(term):
                    raise DuplicateLabelInTuple(resource, span=term.span)
                raise LinearityViolation(str(resource), 2, span=term.span)
            total = total | usage
        return total

    def _bind(
        self,
        gamma: Dict[str, Type],
        labels: Dict[Label, str],
        binders: Sequence[Tuple[str, Type]],
        body: Term,
        expected: Optional[Type] = None,
    ) -> Tuple[Type, Usage]:
        inner = dict(gamma)
        for name, declared in binders:
            inner[name] = declared
        if expected is None:
            found, usage = self._synth(inner, labels, body)
        else:
            found, usage = expected, self._check(inner, labels, body, expected)
        for name, declared in binders:
            if not is_parameter_type(declared) and name not in usage:
                raise LinearityViolation(name, 0, span=body.span)
        names = {name for name, _ in binders}
        outer = frozenset(
            r for r in usage if not (isinstance(r, str) and r in names)
        )
        return found, outer

    def _check(
        self,
        gamma: Dict[str, Type],
        labels: Dict[Label, str],
        term: Term,
        expected: Type,
    ) -> Usage:
        if isinstance(term, Const) and not term.args:
            schema = self._constant(term)
            if has_type_vars(schema):
                if has_type_vars(expected) or not match_type(
                    schema, expected, {}
                ):
                    raise TypeMismatch(expected, schema, span=term.span)
                return NOTHING
        if isinstance(term, LiftT) and isinstance(expected, Bang):
            usage = self._check(gamma, labels, term.body, expected.body)
            self._lift_usage(usage, term)
            return NOTHING
        if isinstance(term, Pair) and isinstance(expected, Tensor):
            first = self._check(gamma, labels, term.first, expected.left)
            second = self._check(gamma, labels, term.second, expected.right)
            return self._disjoint(term, first, second)
        found, usage = self._synth(gamma, labels, term)
        if found != expected:
            raise TypeMismatch(expected, found, span=term.span)
        return usage

    def _constant(self, term: Const) -> Type:
        if term.name not in self.constants:
            raise UnboundVariable(term.name, span=term.span)
        return self.constants[term.name]

    def _lift_usage(self, usage: Usage, term: Term) -> None:
        if usage:
            raise NonParameterUnderLift(
                str(min(usage, key=str)), span=term.span
            )

    def _synth(
        self,
        gamma: Dict[str, Type],
        labels: Dict[Label, str],
        term: Term,
    ) -> Tuple[Type, Usage]:
        try:
            return self._synth_node(gamma, labels, term)
        except (TypeMismatch, LinearityViolation, UnboundVariable) as e:
            raise e.at(term.span)

    def _synth_node(
        self,
        gamma: Dict[str, Type],
        labels: Dict[Label, str],
        term: Term,
    ) -> Tuple[Type, Usage]:
        if isinstance(term, Var):
            if term.name not in gamma:
                raise UnboundVariable(term.name, span=term.span)
            declared = gamma[term.name]
            if is_parameter_type(declared):
                return declared, NOTHING
            return declared, frozenset({term.name})

        if isinstance(term, LabelRef):
            if term.label not in labels:
                raise UnboundLabel(term.label, span=term.span)
            return WireType(labels[term.label]), frozenset({term.label})

        if isinstance(term, (Const, App)):
            return self._synth_spine(gamma, labels, term)

        if isinstance(term, Let):
            bound_type, bound_usage = self._synth(gamma, labels, term.bound)
            found, body_usage = self._bind(
                gamma, labels, [(term.var, bound_type)], term.body
            )
            return found, self._disjoint(term, bound_usage, body_usage)

        if isinstance(term, Abort):
            usage = self._check(gamma, labels, term.body, Zero())
            return term.type, usage

        if isinstance(term, Left):
            usage = self._check(gamma, labels, term.body, term.left_type)
            return Sum(term.left_type, term.right_type), usage

        if isinstance(term, Right):
            usage = self._check(gamma, labels, term.body, term.right_type)
            return Sum(term.left_type, term.right_type), usage

        if isinstance(term, Case):
            scrutinee_type, scrutinee_usage = self._synth(
                gamma, labels, term.scrutinee
            )
            if not isinstance(scrutinee_type, Sum):
                raise TypeMismatch(
                    "a sum type", scrutinee_type, span=term.scrutinee.span
                )
            left_found, left_usage = self._bind(
                gamma,
                labels,
                [(term.left_var, scrutinee_type.left)],
                term.left_body,
            )
            right_found, right_usage = self._bind(
                gamma,
                labels,
                [(term.right_var, scrutinee_type.right)],
                term.right_body,
            )
            if left_found != right_found:
                raise TypeMismatch(
                    left_found, right_found, span=term.right_body.span
                )
            if left_usage != right_usage:
                resource = min(left_usage ^ right_usage, key=str)
                raise LinearityViolation(str(resource), 0, span=term.span)
            return left_found, self._disjoint(
                term, scrutinee_usage, left_usage
            )

        if isinstance(term, UnitV):
            return Unit(), NOTHING

        if isinstance(term, Seq):
            first = self._check(gamma, labels, term.first, Unit())
            found, second = self._synth(gamma, labels, term.second)
            return found, self._disjoint(term, first, second)

        if isinstance(term, Pair):
            left_type, first = self._synth(gamma, labels, term.first)
            right_type, second = self._synth(gamma, labels, term.second)
            return Tensor(left_type, right_type), self._disjoint(
                term, first, second
            )

        if isinstance(term, LetPair):
            bound_type, bound_usage = self._synth(gamma, labels, term.bound)
            if not isinstance(bound_type, Tensor):
                raise TypeMismatch(
                    "a tensor type", bound_type, span=term.bound.span
                )
            if term.first_var == term.second_var:
                raise LinearityViolation(term.first_var, 2, span=term.span)
            found, body_usage = self._bind(
                gamma,
                labels,
                [
                    (term.first_var, bound_type.left),
                    (term.second_var, bound_type.right),
                ],
                term.body,
            )
            return found, self._disjoint(term, bound_usage, body_usage)

        if isinstance(term, Lam):
            found, usage = self._bind(
                gamma, labels, [(term.var, term.var_type)], term.body
            )
            return Lolli(term.var_type, found), usage

        if isinstance(term, LiftT):
            found, usage = self._synth(gamma, labels, term.body)
            self._lift_usage(usage, term)
            return Bang(found), NOTHING

        if isinstance(term, ForceT):
            found, usage = self._synth(gamma, labels, term.body)
            if not isinstance(found, Bang):
                raise TypeMismatch("a !-type", found, span=term.body.span)
            return found.body, usage

        if isinstance(term, BoxT):
            if not is_simple_m_type(term.inp_type):
                raise NotSimpleMType(term.inp_type, span=term.span)
            found, usage = self._synth(gamma, labels, term.body)
            if (
                not isinstance(found, Bang)
                or not isinstance(found.body, Lolli)
                or found.body.arg != term.inp_type
            ):
                raise TypeMismatch(
                    f"!({term.inp_type} -o U)", found, span=term.body.span
                )
            if not is_simple_m_type(found.body.result):
                raise NotSimpleMType(found.body.result, span=term.span)
            return Circ(term.inp_type, found.body.result), usage

        if isinstance(term, ApplyT):
            found, circuit_usage = self._synth(gamma, labels, term.circuit)
            if not isinstance(found, Circ):
                raise TypeMismatch(
                    "a circuit type", found, span=term.circuit.span
                )
            arg_usage = self._check(gamma, labels, term.arg, found.inp)
            return found.out, self._disjoint(term, circuit_usage, arg_usage)

        if isinstance(term, BoxedCirc):
            return self._boxed_type(term), NOTHING

        if isinstance(term, NatLit):
            return NatT(), NOTHING

        if isinstance(term, Succ):
            return NatT(), self._check(gamma, labels, term.body, NatT())

        if isinstance(term, Nil):
            return ListT(term.elem_type), NOTHING

        if isinstance(term, Cons):
            head_type, head_usage = self._synth(gamma, labels, term.head)
            tail_usage = self._check(
                gamma, labels, term.tail, ListT(head_type)
            )
            return ListT(head_type), self._disjoint(
                term, head_usage, tail_usage
            )

        raise TypeError(f"unknown term {term!r}")

    def _boxed_type(self, term: BoxedCirc) -> Type:
        boxed = term.boxed
        if self.signature is not None:
            try:
                boxed.validate(self.signature)
            except CircuitError as e:
                raise InterfaceMismatch(str(e), span=term.span)
        try:
            inp = tuple_type(boxed.in_tuple, boxed.circuit.inputs)
            out = tuple_type(boxed.out_tuple, boxed.circuit.outputs)
        except (KeyError, CircuitError) as e:
            raise InterfaceMismatch(str(e), span=term.span)
        return Circ(inp, out)

    def _synth_spine(
        self,
        gamma: Dict[str, Type],
        labels: Dict[Label, str],
        term: Term,
    ) -> Tuple[Type, Usage]:
        head, args = _spine(term)
        if isinstance(head, Const):
            current = self._constant(head)
            usage = NOTHING
            if has_type_vars(current) and not args:
                raise TypeMismatch(
                    f"an application of schematic constant {head.name}",
                    current,
                    span=head.span,
                )
        else:
            current, usage = self._synth(gamma, labels, head)
        subst: Dict[str, Type] = {}
        for arg in args:
            if not isinstance(current, Lolli):
                raise TypeMismatch(
                    "a function type",
                    substitute_type(current, subst),
                    span=arg.span,
                )
            wanted = substitute_type(current.arg, subst)
            if has_type_vars(wanted):
                found, arg_usage = self._synth(gamma, labels, arg)
                if not match_type(wanted, found, subst):
                    raise TypeMismatch(wanted, found, span=arg.span)
            else:
                arg_usage = self._check(gamma, labels, arg, wanted)
            usage = self._disjoint(term, usage, arg_usage)
            current = current.result
        result = substitute_type(current, subst)
        if has_type_vars(result):
            raise TypeMismatch(
                "a fully instantiated type", result, span=term.span
            )
        return result, usage


def is_label_tuple_like(term: Term) -> bool:
    """
    True iff `term` is built from labels, `()` and pairs only, whether or
    not its labels are distinct.
    """
    if isinstance(term, (LabelRef, UnitV)):
        return True
    if isinstance(term, Pair):
        return is_label_tuple_like(term.first) and is_label_tuple_like(
            term.second
        )
    return False

