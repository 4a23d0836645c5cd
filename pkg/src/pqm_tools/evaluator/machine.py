"""
Big-step evaluation of configurations.

Evaluation is substitution based and strictly left to right. The circuit
under construction is held by the evaluator and only ever extended; `box`
evaluates its body against a fresh identity circuit and restores the outer
one afterwards. Run-time errors become `ErrorOutcome`s, never exceptions.
"""
import logging
from typing import Dict, List, Mapping, Optional

from ..builtins import BadArgument, ConstantDecl, builtin_environment
from ..circuit import (
    BoxedCircuit,
    CircuitError,
    LabelAllocator,
    LabelContext,
    LabelledCircuit,
    Signature,
    append,
    default_signature,
    freshlabels,
)
from ..syntax import (
    Abort,
    App,
    ApplyT,
    BoxedCirc,
    BoxT,
    Case,
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
    NatLit,
    Nil,
    Pair,
    Right,
    Seq,
    Succ,
    Term,
    UnitV,
    Var,
    free_labels,
    free_variables,
    fresh_name,
    is_simple_m_type,
    substitute,
    term_size,
)
from .outcome import (
    Configuration,
    ErrorKind,
    ErrorOutcome,
    EvalOutcome,
    EvaluationError,
    FuelExhausted,
    OutOfFuel,
    ValueConfig,
)

VALUE_FORMS = (LabelRef, Lam, UnitV, LiftT, BoxedCirc, NatLit, Nil)
STRUCTURED_FORMS = (Pair, Cons, Left, Right)


def _runtime_type_error(expected: str, found: Term) -> EvaluationError:
    return EvaluationError(
        ErrorKind.RUNTIME_TYPE_ERROR, f"expected {expected}, found {found}"
    )


class Evaluator:
    """
    Evaluator for a fixed signature and constant environment.

    `fuel` bounds the number of rule applications of a single evaluation;
    `trace` records one structured event per rule application.
    """

    signature: Signature
    environment: Mapping[str, ConstantDecl]
    fuel: Optional[int]
    trace: bool
    traces: List[Dict] | None = None
    circuit: LabelledCircuit
    allocator: LabelAllocator
    steps: int
    active: List[str]

    def __init__(
        self,
        signature: Optional[Signature] = None,
        environment: Optional[Mapping[str, ConstantDecl]] = None,
        fuel: Optional[int] = None,
        trace: bool = False,
    ):
        self.signature = signature or default_signature()
        self.environment = (
            environment
            if environment is not None
            else builtin_environment(self.signature)
        )
        self.fuel = fuel
        self.trace = trace
        self.log = logging.getLogger(__name__)
        self.circuit = LabelledCircuit.identity(LabelContext())
        self.allocator = LabelAllocator()
        self.steps = 0
        self.active = []

    # traces

    def reset_traces(self):
        """
        Resets the internal trace storage for a new evaluation to begin
        """
        self.traces = None

    def append_trace(self, record: Dict):
        """
        Appends one rule application to the current list of traces
        """
        if self.traces is None:
            self.traces = []
        self.traces.append(record)

    def get_traces(self) -> List[Dict] | None:
        """
        Returns the accumulated traces
        """
        return self.traces

    # entry points

    def eval(
        self,
        config: Configuration,
        allocator: Optional[LabelAllocator] = None,
    ) -> EvalOutcome:
        """
        Evaluate `config`. Without an allocator, one is created above every
        label occurring in the configuration.
        """
        self.circuit = config.circuit
        self.allocator = allocator or LabelAllocator.above(
            config.circuit.labels(), free_labels(config.term)
        )
        self.steps = 0
        self.active = []
        try:
            value = self._eval(config.term)
        except EvaluationError as e:
            self.log.debug(f"evaluation failed: {e}")
            return ErrorOutcome(
                kind=e.kind,
                detail=e.detail,
                trace=tuple(self.active),
                steps=self.steps,
            )
        except OutOfFuel as e:
            self.log.debug(f"evaluation ran out of fuel: {e}")
            return FuelExhausted(steps=e.steps)
        return ValueConfig(circuit=self.circuit, value=value, steps=self.steps)

    def run(self, term: Term) -> EvalOutcome:
        """
        Evaluate `term` against the empty circuit.
        """
        return self.eval(
            Configuration(
                circuit=LabelledCircuit.identity(LabelContext()), term=term
            )
        )

    # delta rule support

    def attach_gate(self, gate: str, inputs: List[Label]) -> List[Label]:
        """
        Append `gate` on `inputs` to the circuit under construction.
        """
        self.circuit, outputs = self.circuit.append_gate(
            self.signature, gate, inputs, self.allocator
        )
        return outputs

    def evaluate(self, term: Term) -> Term:
        """
        Evaluate `term` within the running evaluation.
        """
        return self._eval(term)

    # rules

    def _eval(self, term: Term) -> Term:
        rule = type(term).__name__
        self.steps += 1
        if self.fuel is not None and self.steps > self.fuel:
            raise OutOfFuel(self.fuel)
        if self.trace:
            self.append_trace(
                {
                    "step": self.steps,
                    "rule": rule,
                    "circuit_size": self.circuit.size(),
                    "term_size": term_size(term),
                }
            )
        self.active.append(rule)
        try:
            value = self._rule(term)
        except CircuitError as e:
            raise EvaluationError(ErrorKind.of_circuit_error(e), str(e))
        except BadArgument as e:
            raise EvaluationError(ErrorKind.RUNTIME_TYPE_ERROR, str(e))
        self.active.pop()
        return value

    def _rule(self, term: Term) -> Term:
        if isinstance(term, VALUE_FORMS):
            return term

        # closed values built earlier are returned without a re-walk
        if (
            isinstance(term, STRUCTURED_FORMS)
            and term.value_form
            and not free_variables(term)
        ):
            return term

        if isinstance(term, Var):
            raise EvaluationError(
                ErrorKind.UNBOUND_VARIABLE, f"unbound variable {term.name}"
            )

        if isinstance(term, Const):
            if term.name not in self.environment:
                raise EvaluationError(
                    ErrorKind.UNBOUND_VARIABLE,
                    f"unknown constant {term.name}",
                )
            return term

        if isinstance(term, Let):
            bound = self._eval(term.bound)
            return self._eval(substitute(term.body, term.var, bound))

        if isinstance(term, Abort):
            found = self._eval(term.body)
            raise _runtime_type_error("a value of type 0", found)

        if isinstance(term, Left):
            return Left(term.left_type, term.right_type, self._eval(term.body))

        if isinstance(term, Right):
            return Right(
                term.left_type, term.right_type, self._eval(term.body)
            )

        if isinstance(term, Case):
            scrutinee = self._eval(term.scrutinee)
            if isinstance(scrutinee, Left):
                return self._eval(
                    substitute(term.left_body, term.left_var, scrutinee.body)
                )
            if isinstance(scrutinee, Right):
                return self._eval(
                    substitute(
                        term.right_body, term.right_var, scrutinee.body
                    )
                )
            raise _runtime_type_error("an injection", scrutinee)

        if isinstance(term, Seq):
            first = self._eval(term.first)
            if not isinstance(first, UnitV):
                raise _runtime_type_error("()", first)
            return self._eval(term.second)

        if isinstance(term, Pair):
            first = self._eval(term.first)
            return Pair(first, self._eval(term.second))

        if isinstance(term, LetPair):
            bound = self._eval(term.bound)
            if not isinstance(bound, Pair):
                raise _runtime_type_error("a pair", bound)
            return self._eval(self._split(term, bound))

        if isinstance(term, App):
            fun = self._eval(term.fun)
            arg = self._eval(term.arg)
            if isinstance(fun, Lam):
                return self._eval(substitute(fun.body, fun.var, arg))
            if isinstance(fun, Const):
                return self._apply_constant(fun, arg)
            raise _runtime_type_error("a function", fun)

        if isinstance(term, ForceT):
            lifted = self._eval(term.body)
            if not isinstance(lifted, LiftT):
                raise _runtime_type_error("a lifted term", lifted)
            return self._eval(lifted.body)

        if isinstance(term, BoxT):
            return self._box(term)

        if isinstance(term, ApplyT):
            boxed = self._eval(term.circuit)
            if not isinstance(boxed, BoxedCirc):
                raise _runtime_type_error("a boxed circuit", boxed)
            targets = self._eval(term.arg)
            self.circuit, outputs = append(
                self.circuit, targets, boxed.boxed, self.allocator
            )
            return outputs

        if isinstance(term, Succ):
            found = self._eval(term.body)
            if not isinstance(found, NatLit):
                raise _runtime_type_error("a natural number", found)
            return NatLit(found.value + 1)

        if isinstance(term, Cons):
            head = self._eval(term.head)
            return Cons(head, self._eval(term.tail))

        raise TypeError(f"unknown term {term!r}")

    def _split(self, term: LetPair, bound: Pair) -> Term:
        """
        Body of a pair pattern with both components substituted at once.
        """
        avoid = (
            free_variables(bound)
            | free_variables(term.body)
            | {term.first_var, term.second_var}
        )
        first = fresh_name(term.first_var, avoid)
        second = fresh_name(term.second_var, avoid | {first})
        body = substitute(term.body, term.first_var, Var(first))
        body = substitute(body, term.second_var, Var(second))
        body = substitute(body, first, bound.first)
        return substitute(body, second, bound.second)

    def _apply_constant(self, constant: Const, arg: Term) -> Term:
        decl = self.environment.get(constant.name)
        if decl is None:
            raise EvaluationError(
                ErrorKind.UNBOUND_VARIABLE,
                f"unknown constant {constant.name}",
            )
        args = constant.args + (arg,)
        if len(args) < decl.arity:
            return Const(constant.name, args)
        if self.trace:
            self.append_trace(
                {
                    "step": self.steps,
                    "rule": "delta",
                    "constant": constant.name,
                    "circuit_size": self.circuit.size(),
                }
            )
        return decl.delta(self, args)

    def _box(self, term: BoxT) -> Term:
        lifted = self._eval(term.body)
        if not isinstance(lifted, LiftT):
            raise _runtime_type_error("a lifted term", lifted)
        if not is_simple_m_type(term.inp_type):
            raise _runtime_type_error("a simple M-type", lifted)
        context, inputs = freshlabels(term.inp_type, self.allocator)
        outer = self.circuit
        self.circuit = LabelledCircuit.identity(context)
        try:
            outputs = self._eval(App(lifted.body, inputs))
            inner = self.circuit
        finally:
            self.circuit = outer
        return BoxedCirc(BoxedCircuit(inputs, inner, outputs))


def evaluate(
    config: Configuration,
    signature: Optional[Signature] = None,
    allocator: Optional[LabelAllocator] = None,
    fuel: Optional[int] = None,
) -> EvalOutcome:
    """
    Evaluate `config` with the standard constants of `signature`.
    """
    return Evaluator(signature, fuel=fuel).eval(config, allocator)
