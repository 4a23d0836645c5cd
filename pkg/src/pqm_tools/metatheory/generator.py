"""
Type-directed random generation of well-typed terms and configurations.

Generation inverts the typing rules: for a target type it picks a rule
whose conclusion can have that type, splits the linear resources (linear
variables and labels) randomly between the premises and recurses. Every
call consumes exactly the linear resources it is given. When the depth
budget runs out the remaining resources are consumed by sink terms built
from signature gates (e.g. `discard (meas q)`).
"""
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

from ..builtins import builtin_environment, constant_types
from ..checker import Checker
from ..circuit import (
    BoxedCircuit,
    LabelAllocator,
    LabelContext,
    LabelledCircuit,
    Signature,
    default_signature,
)
from ..evaluator import Evaluator, ValueConfig
from ..syntax import (
    BIT,
    QUBIT,
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
    is_parameter_type,
    is_simple_m_type,
    wire_names,
)

Resource = Union[str, Label]
Rule = Callable[[], Term]

DEFAULT_TARGETS: Tuple[Type, ...] = (
    Unit(),
    QUBIT,
    BIT,
    Tensor(QUBIT, QUBIT),
    NatT(),
    Sum(Unit(), Unit()),
    Lolli(QUBIT, QUBIT),
    Bang(Lolli(QUBIT, QUBIT)),
    Circ(QUBIT, QUBIT),
    Circ(Tensor(QUBIT, QUBIT), Tensor(QUBIT, QUBIT)),
    Circ(Unit(), QUBIT),
    ListT(QUBIT),
    Tensor(BIT, NatT()),
)

BOX_SHAPES: Tuple[Type, ...] = (
    Unit(),
    QUBIT,
    BIT,
    Tensor(QUBIT, QUBIT),
    Tensor(QUBIT, BIT),
    Tensor(QUBIT, Tensor(QUBIT, QUBIT)),
)

PARAMETER_SHAPES: Tuple[Type, ...] = (
    NatT(),
    Circ(QUBIT, QUBIT),
    Bang(Lolli(QUBIT, QUBIT)),
    Sum(Unit(), Unit()),
)


class GenerationFailure(Exception):
    """
    No term of the requested type was found within the retry budget.
    """

    type: Type
    reason: str

    def __init__(self, type: Type, reason: str, *args):
        super().__init__(args)
        self.type = type
        self.reason = reason

    def __str__(self):
        """Print exception string"""
        return f"cannot generate a term of type {self.type}: {self.reason}"


@dataclass(kw_only=True, frozen=True)
class GenSpec:
    """
    Parameters of a generation run. The same seed always yields the same
    sequence of terms.
    """

    max_depth: int = 6
    signature: Signature = field(default_factory=default_signature)
    targets: Tuple[Type, ...] = DEFAULT_TARGETS
    seed: int = 0
    retries: int = 20
    max_box_wires: int = 3

    def __post_init__(self) -> None:
        """Reject empty depth budgets"""
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")

    def trial_seeds(self, trials: int) -> List[int]:
        """
        Per-trial seeds derived from the master seed.
        """
        rng = random.Random(self.seed)
        return [rng.getrandbits(32) for _ in range(trials)]

    def box_shapes(self) -> List[Type]:
        """
        Interfaces available for generated boxes under the signature.
        """
        return [
            shape
            for shape in BOX_SHAPES
            if set(wire_names(shape)) <= self.signature.wire_types
            and len(wire_names(shape)) <= self.max_box_wires
        ]


@dataclass(kw_only=True, frozen=True)
class GeneratedConfiguration:
    """
    `inputs |- (circuit, term) : type; reserved`, with the seed and depth
    that produced it.
    """

    seed: int
    depth: int
    inputs: LabelContext
    circuit: LabelledCircuit
    reserved: LabelContext
    term: Term
    type: Type

    def labels(self) -> LabelContext:
        """
        Outputs of the circuit that the term consumes.
        """
        return self.circuit.outputs.without(self.reserved)


def _node(t: Type) -> Optional[str]:
    if isinstance(t, Unit):
        return ""
    if isinstance(t, WireType):
        return t.name
    return None


def unary_paths(signature: Signature) -> Dict[Tuple[str, str], List[str]]:
    """
    Shortest chains of single-wire gates between wire types, with `""`
    standing for `I`: `("", "Qubit")` is a way to create a qubit and
    `("Qubit", "")` a way to get rid of one.
    """
    edges: List[Tuple[str, str, str]] = []
    for gate in signature.gates:
        source, target = _node(gate.input), _node(gate.output)
        if source is not None and target is not None:
            edges.append((source, target, gate.name))
    paths: Dict[Tuple[str, str], List[str]] = {}
    for start in [""] + sorted(signature.wire_types):
        seen: Dict[str, List[str]] = {start: []}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for source, target, gate in edges:
                if source == node and target not in seen:
                    seen[target] = seen[node] + [gate]
                    queue.append(target)
        for end, chain in seen.items():
            paths[(start, end)] = chain
    return paths


def _chain(gates: List[str], term: Term) -> Term:
    for gate in gates:
        term = App(Const(gate), term)
    return term


def _resource_term(resource: Resource) -> Term:
    if isinstance(resource, Label):
        return LabelRef(resource)
    return Var(resource)


class TermGenerator:
    """
    Random generator of well-typed terms over one signature.
    """

    spec: GenSpec
    rng: random.Random
    counter: int
    paths: Dict[Tuple[str, str], List[str]]

    def __init__(self, spec: GenSpec, rng: random.Random):
        self.spec = spec
        self.rng = rng
        self.counter = 0
        self.signature = spec.signature
        self.environment = builtin_environment(spec.signature)
        self.checker = Checker(
            constant_types(self.environment), spec.signature
        )
        self.paths = unary_paths(spec.signature)
        self.inhabited_cache: Dict[Type, bool] = {}
        self.sinkable_cache: Dict[Type, bool] = {}

    # entry point

    def generate(
        self,
        gamma: Dict[str, Type],
        labels: Dict[Label, str],
        target: Type,
        depth: int,
    ) -> Term:
        """
        A term `M` with `gamma; labels |- M : target`, checked before it
        is returned.
        """
        if not self.inhabited(target):
            raise GenerationFailure(target, "type is uninhabited")
        params = {n: t for n, t in gamma.items() if is_parameter_type(t)}
        linear: Dict[Resource, Type] = {
            n: t for n, t in gamma.items() if not is_parameter_type(t)
        }
        linear.update({k: WireType(w) for k, w in labels.items()})
        for _ in range(self.spec.retries):
            try:
                term = self.gen(params, linear, target, depth)
            except GenerationFailure:
                continue
            self.checker.check(gamma, labels, term, target)
            return term
        raise GenerationFailure(target, "retries exhausted")

    # helpers

    def fresh(self, prefix: str = "x") -> str:
        """
        New variable name, never reused by this generator.
        """
        self.counter += 1
        return f"{prefix}{self.counter}"

    def split(
        self, linear: Dict[Resource, Type]
    ) -> Tuple[Dict[Resource, Type], Dict[Resource, Type]]:
        """
        Random partition of the linear resources in two.
        """
        first: Dict[Resource, Type] = {}
        second: Dict[Resource, Type] = {}
        for resource, t in linear.items():
            (first if self.rng.random() < 0.5 else second)[resource] = t
        return first, second

    def bind(
        self,
        params: Dict[str, Type],
        linear: Dict[Resource, Type],
        name: str,
        t: Type,
    ) -> Tuple[Dict[str, Type], Dict[Resource, Type]]:
        """
        Contexts extended with a binder of type `t`.
        """
        if is_parameter_type(t):
            return {**params, name: t}, dict(linear)
        return dict(params), {**linear, name: t}

    def inhabited(self, t: Type) -> bool:
        """
        True iff `construct` can build a closed term of type `t`.
        """
        if t not in self.inhabited_cache:
            self.inhabited_cache[t] = False
            self.inhabited_cache[t] = self._inhabited(t)
        return self.inhabited_cache[t]

    def _inhabited(self, t: Type) -> bool:
        if isinstance(t, (Unit, NatT, ListT)):
            return True
        if isinstance(t, WireType):
            return ("", t.name) in self.paths
        if isinstance(t, Tensor):
            return self.inhabited(t.left) and self.inhabited(t.right)
        if isinstance(t, Sum):
            return self.inhabited(t.left) or self.inhabited(t.right)
        if isinstance(t, Bang):
            return self.inhabited(t.body)
        if isinstance(t, Lolli):
            return self.sinkable(t.arg) and self.inhabited(t.result)
        if isinstance(t, Circ):
            return self.sinkable(t.inp) and self.inhabited(t.out)
        return False

    def sinkable(self, t: Type) -> bool:
        """
        True iff `sink` can consume a value of type `t`.
        """
        if t not in self.sinkable_cache:
            self.sinkable_cache[t] = False
            self.sinkable_cache[t] = self._sinkable(t)
        return self.sinkable_cache[t]

    def _sinkable(self, t: Type) -> bool:
        if is_parameter_type(t):
            return True
        if isinstance(t, WireType):
            return (t.name, "") in self.paths
        if isinstance(t, (Tensor, Sum)):
            return self.sinkable(t.left) and self.sinkable(t.right)
        if isinstance(t, ListT):
            return self.sinkable(t.elem)
        if isinstance(t, Lolli):
            return self.inhabited(t.arg) and self.sinkable(t.result)
        return False

    def construct(self, params: Dict[str, Type], t: Type) -> Term:
        """
        Small closed term of type `t`, using no linear resources.
        """
        if not self.inhabited(t):
            raise GenerationFailure(t, "type is uninhabited")
        shared = [name for name, p in params.items() if p == t]
        if shared and self.rng.random() < 0.5:
            return Var(self.rng.choice(shared))
        if isinstance(t, Unit):
            return UnitV()
        if isinstance(t, NatT):
            return NatLit(self.rng.randint(0, 3))
        if isinstance(t, WireType):
            return _chain(self.paths[("", t.name)], UnitV())
        if isinstance(t, Tensor):
            first = self.construct(params, t.left)
            return Pair(first, self.construct(params, t.right))
        if isinstance(t, Sum):
            if self.inhabited(t.left) and (
                not self.inhabited(t.right) or self.rng.random() < 0.5
            ):
                return Left(t.left, t.right, self.construct(params, t.left))
            return Right(t.left, t.right, self.construct(params, t.right))
        if isinstance(t, Bang):
            return LiftT(self.construct(params, t.body))
        if isinstance(t, Lolli):
            return self.consuming_lambda(params, t.arg, t.result)
        if isinstance(t, Circ):
            return BoxT(
                t.inp, LiftT(self.consuming_lambda(params, t.inp, t.out))
            )
        if isinstance(t, ListT):
            return Nil(t.elem)
        raise GenerationFailure(t, "no constructor")

    def consuming_lambda(
        self, params: Dict[str, Type], arg: Type, result: Type
    ) -> Term:
        """
        `fun x : arg . sink x ; construct result`.
        """
        name = self.fresh()
        body = self.construct(params, result)
        if not is_parameter_type(arg):
            body = Seq(self.sink(params, Var(name), arg), body)
        return Lam(name, arg, body)

    def sink(self, params: Dict[str, Type], term: Term, t: Type) -> Term:
        """
        Term of type `I` consuming `term : t`.
        """
        if isinstance(t, Unit):
            return term
        if isinstance(t, Zero):
            return Abort(Unit(), term)
        if is_parameter_type(t):
            return Let(self.fresh("u"), term, UnitV())
        if isinstance(t, WireType):
            if (t.name, "") not in self.paths:
                raise GenerationFailure(t, "no way to discard this wire")
            return _chain(self.paths[(t.name, "")], term)
        if isinstance(t, Tensor):
            a, b = self.fresh(), self.fresh()
            return LetPair(
                a,
                b,
                term,
                Seq(
                    self.sink(params, Var(a), t.left),
                    self.sink(params, Var(b), t.right),
                ),
            )
        if isinstance(t, Sum):
            a, b = self.fresh(), self.fresh()
            return Case(
                term,
                a,
                self.sink(params, Var(a), t.left),
                b,
                self.sink(params, Var(b), t.right),
            )
        if isinstance(t, ListT):
            p, u, e = self.fresh("p"), self.fresh("u"), self.fresh()
            step = Lam(
                p,
                Tensor(Unit(), t.elem),
                LetPair(
                    u,
                    e,
                    Var(p),
                    Seq(Var(u), self.sink(params, Var(e), t.elem)),
                ),
            )
            return App(
                App(App(Const("foldList"), LiftT(step)), UnitV()), term
            )
        if isinstance(t, Lolli):
            return self.sink(
                params, App(term, self.construct(params, t.arg)), t.result
            )
        raise GenerationFailure(t, "no way to consume this type")

    def finish(
        self,
        params: Dict[str, Type],
        linear: Dict[Resource, Type],
        target: Type,
    ) -> Term:
        """
        Consume every linear resource, then build `target` from nothing.
        """
        if len(linear) == 1:
            ((resource, t),) = linear.items()
            if t == target:
                return _resource_term(resource)
        term = self.construct(params, target)
        resources = list(linear.items())
        self.rng.shuffle(resources)
        for resource, t in resources:
            term = Seq(self.sink(params, _resource_term(resource), t), term)
        return term

    # generation

    def gen(
        self,
        params: Dict[str, Type],
        linear: Dict[Resource, Type],
        target: Type,
        depth: int,
    ) -> Term:
        """
        Term of type `target` consuming exactly `linear`.
        """
        if not self.inhabited(target):
            raise GenerationFailure(target, "type is uninhabited")
        if depth <= 1:
            return self.finish(params, linear, target)
        rules = self.rules(params, linear, target, depth - 1)
        while rules:
            weights = [weight for weight, _ in rules]
            index = self.rng.choices(range(len(rules)), weights)[0]
            _, rule = rules.pop(index)
            try:
                return rule()
            except GenerationFailure:
                continue
        return self.finish(params, linear, target)

    def rules(
        self,
        params: Dict[str, Type],
        linear: Dict[Resource, Type],
        target: Type,
        depth: int,
    ) -> List[Tuple[int, Rule]]:
        """
        Weighted rules whose conclusion can have type `target`.
        """
        rules: List[Tuple[int, Rule]] = []

        def gen(
            p: Dict[str, Type], lin: Dict[Resource, Type], t: Type
        ) -> Term:
            return self.gen(p, lin, t, depth)

        if len(linear) == 1 and list(linear.values())[0] == target:
            rules.append((3, lambda: self.finish(params, linear, target)))
        shared = [name for name, t in params.items() if t == target]
        if shared and not linear:
            rules.append((2, lambda: Var(self.rng.choice(shared))))

        rules.extend(self.intro_rules(params, linear, target, gen))
        rules.extend(self.elim_rules(params, linear, target, gen))
        rules.extend(self.parameter_rules(params, linear, target, gen))
        return rules

    def intro_rules(
        self,
        params: Dict[str, Type],
        linear: Dict[Resource, Type],
        target: Type,
        gen: Callable[[Dict[str, Type], Dict[Resource, Type], Type], Term],
    ) -> List[Tuple[int, Rule]]:
        """
        Rules that build a value of the target type's shape.
        """
        rules: List[Tuple[int, Rule]] = []
        t = target

        if isinstance(t, Tensor):

            def pair() -> Term:
                first, second = self.split(linear)
                return Pair(
                    gen(params, first, t.left), gen(params, second, t.right)
                )

            rules.append((3, pair))

        if isinstance(t, Lolli):

            def lam() -> Term:
                name = self.fresh()
                p, lin = self.bind(params, linear, name, t.arg)
                return Lam(name, t.arg, gen(p, lin, t.result))

            rules.append((3, lam))

        if isinstance(t, Sum):
            if self.inhabited(t.left):
                rules.append(
                    (
                        2,
                        lambda: Left(
                            t.left, t.right, gen(params, linear, t.left)
                        ),
                    )
                )
            if self.inhabited(t.right):
                rules.append(
                    (
                        2,
                        lambda: Right(
                            t.left, t.right, gen(params, linear, t.right)
                        ),
                    )
                )

        if isinstance(t, Bang) and not linear:
            rules.append((3, lambda: LiftT(gen(params, {}, t.body))))

        if isinstance(t, Circ) and not linear:

            def box() -> Term:
                name = self.fresh()
                p, lin = self.bind(params, {}, name, t.inp)
                return BoxT(t.inp, LiftT(Lam(name, t.inp, gen(p, lin, t.out))))

            rules.append((3, box))
            rules.append((1, lambda: BoxedCirc(self.literal(t))))
            rules.append((1, lambda: self.inverted(t)))

        if isinstance(t, NatT):
            if not linear:
                rules.append(
                    (2, lambda: NatLit(self.rng.randint(0, 5)))
                )
            rules.append((1, lambda: Succ(gen(params, linear, t))))

            def size() -> Term:
                shape = Circ(
                    self.rng.choice(self.spec.box_shapes()),
                    self.rng.choice(self.spec.box_shapes()),
                )
                return App(Const("size"), gen(params, linear, shape))

            rules.append((1, size))

        if isinstance(t, ListT):
            if not linear:
                rules.append((1, lambda: Nil(t.elem)))

            def cons() -> Term:
                first, second = self.split(linear)
                return Cons(gen(params, first, t.elem), gen(params, second, t))

            rules.append((2, cons))

        if is_simple_m_type(t):
            for gate in self.signature.gates:
                if gate.output == t:

                    def attach(name: str = gate.name, inp: Type = gate.input):
                        return App(Const(name), gen(params, linear, inp))

                    rules.append((3, attach))

            def apply() -> Term:
                shape = self.rng.choice(self.spec.box_shapes())
                first, second = self.split(linear)
                return ApplyT(
                    gen(params, first, Circ(shape, t)),
                    gen(params, second, shape),
                )

            rules.append((2, apply))

        def fold() -> Term:
            name = self.fresh("acc")
            p, lin = self.bind(params, {}, name, t)
            step = LiftT(Lam(name, t, gen(p, lin, t)))
            base = gen(params, linear, t)
            count = NatLit(self.rng.randint(0, 3))
            return App(App(App(Const("foldNat"), step), base), count)

        rules.append((1, fold))
        return rules

    def elim_rules(
        self,
        params: Dict[str, Type],
        linear: Dict[Resource, Type],
        target: Type,
        gen: Callable[[Dict[str, Type], Dict[Resource, Type], Type], Term],
    ) -> List[Tuple[int, Rule]]:
        """
        Rules that take apart one linear resource.
        """
        rules: List[Tuple[int, Rule]] = []
        if not linear:
            return rules
        resource = self.rng.choice(list(linear))
        t = linear[resource]
        rest = {r: u for r, u in linear.items() if r != resource}
        term = _resource_term(resource)

        if isinstance(t, Tensor):

            def let_pair() -> Term:
                a, b = self.fresh(), self.fresh()
                p, lin = self.bind(params, rest, a, t.left)
                p, lin = self.bind(p, lin, b, t.right)
                return LetPair(a, b, term, gen(p, lin, target))

            rules.append((3, let_pair))

        if isinstance(t, Sum):

            def case() -> Term:
                a, b = self.fresh(), self.fresh()
                left_p, left_lin = self.bind(params, rest, a, t.left)
                right_p, right_lin = self.bind(params, rest, b, t.right)
                return Case(
                    term,
                    a,
                    gen(left_p, left_lin, target),
                    b,
                    gen(right_p, right_lin, target),
                )

            rules.append((3, case))

        if isinstance(t, WireType):
            for gate in self.signature.gates:
                if gate.input == t:

                    def attach(name: str = gate.name, out: Type = gate.output):
                        y = self.fresh()
                        p, lin = self.bind(params, rest, y, out)
                        return Let(
                            y, App(Const(name), term), gen(p, lin, target)
                        )

                    rules.append((3, attach))
            for other, u in rest.items():
                for gate in self.signature.gates:
                    if gate.input == Tensor(t, u):

                        def attach_two(
                            name: str = gate.name,
                            out: Type = gate.output,
                            other: Resource = other,
                        ):
                            y = self.fresh()
                            remaining = {
                                r: v for r, v in rest.items() if r != other
                            }
                            p, lin = self.bind(params, remaining, y, out)
                            return Let(
                                y,
                                App(
                                    Const(name),
                                    Pair(term, _resource_term(other)),
                                ),
                                gen(p, lin, target),
                            )

                        rules.append((2, attach_two))

        if isinstance(t, Lolli):

            def call() -> Term:
                y = self.fresh()
                first, second = self.split(rest)
                p, lin = self.bind(params, second, y, t.result)
                return Let(
                    y,
                    App(term, gen(params, first, t.arg)),
                    gen(p, lin, target),
                )

            rules.append((2, call))

        rules.append(
            (
                1,
                lambda: Seq(
                    self.sink(params, term, t), gen(params, rest, target)
                ),
            )
        )
        return rules

    def parameter_rules(
        self,
        params: Dict[str, Type],
        linear: Dict[Resource, Type],
        target: Type,
        gen: Callable[[Dict[str, Type], Dict[Resource, Type], Type], Term],
    ) -> List[Tuple[int, Rule]]:
        """
        Rules that introduce or use duplicable values.
        """
        rules: List[Tuple[int, Rule]] = []

        def let_parameter() -> Term:
            shape = self.rng.choice(PARAMETER_SHAPES)
            name = self.fresh("p")
            first, second = self.split(linear)
            return Let(
                name,
                gen(params, first, shape),
                gen({**params, name: shape}, second, target),
            )

        rules.append((1, let_parameter))

        def beta() -> Term:
            shape = self.rng.choice(self.spec.box_shapes())
            name = self.fresh()
            first, second = self.split(linear)
            p, lin = self.bind(params, second, name, shape)
            return App(
                Lam(name, shape, gen(p, lin, target)),
                gen(params, first, shape),
            )

        rules.append((1, beta))

        if not linear:
            rules.append((1, lambda: ForceT(LiftT(gen(params, {}, target)))))

        for name, t in params.items():
            if (
                isinstance(t, Bang)
                and isinstance(t.body, Lolli)
                and t.body.result == target
            ):

                def force(name: str = name, arg: Type = t.body.arg):
                    return App(ForceT(Var(name)), gen(params, linear, arg))

                rules.append((2, force))
            if isinstance(t, Circ) and t.out == target:

                def apply(name: str = name, inp: Type = t.inp):
                    return ApplyT(Var(name), gen(params, linear, inp))

                rules.append((2, apply))
        return rules

    # boxed circuit literals

    def literal(self, t: Circ) -> BoxedCircuit:
        """
        Canonical boxed circuit of type `t`, obtained by evaluating a
        generated `box` term.
        """
        name = self.fresh()
        p, lin = self.bind({}, {}, name, t.inp)
        term = BoxT(
            t.inp, LiftT(Lam(name, t.inp, self.gen(p, lin, t.out, 2)))
        )
        outcome = Evaluator(self.signature, self.environment).run(term)
        if not isinstance(outcome, ValueConfig) or not isinstance(
            outcome.value, BoxedCirc
        ):
            raise GenerationFailure(t, f"literal evaluation gave {outcome}")
        return outcome.value.boxed.canonicalize()

    def inverted(self, t: Circ) -> Term:
        """
        `invert` applied to a literal of the opposite type made of
        invertible gates only.
        """
        boxed = self.literal(Circ(t.out, t.inp))
        for application in boxed.circuit.gates:
            if not self.signature.gate(application.gate).invertible:
                raise GenerationFailure(t, "literal is not invertible")
        return App(Const("invert"), BoxedCirc(boxed))


def generate_well_typed(
    spec: GenSpec,
    gamma: Dict[str, Type],
    labels: Dict[Label, str],
    target: Type,
    rng: Optional[random.Random] = None,
) -> Term:
    """
    Random term of type `target` under `gamma` and `labels`.
    """
    generator = TermGenerator(spec, rng or random.Random(spec.seed))
    return generator.generate(gamma, labels, target, spec.max_depth)


def random_circuit(
    signature: Signature,
    rng: random.Random,
    inputs: LabelContext,
    gates: int,
    allocator: LabelAllocator,
) -> LabelledCircuit:
    """
    Valid circuit from `inputs` with up to `gates` random gates.
    """
    circuit = LabelledCircuit.identity(inputs)
    for _ in range(gates):
        candidates: List[Tuple[str, List[Label]]] = []
        for gate in signature.gates:
            chosen: List[Label] = []
            for wire in gate.input_wires():
                live = [
                    k
                    for k, w in circuit.outputs.items()
                    if w == wire and k not in chosen
                ]
                if not live:
                    break
                chosen.append(rng.choice(live))
            else:
                candidates.append((gate.name, chosen))
        if not candidates:
            break
        name, chosen = rng.choice(candidates)
        circuit, _ = circuit.append_gate(signature, name, chosen, allocator)
    return circuit


def generate_configuration(
    spec: GenSpec, seed: int, depth: Optional[int] = None
) -> GeneratedConfiguration:
    """
    Random well-typed configuration: a random circuit, a random split of
    its outputs into reserved wires and wires handed to the term, and a
    term of a target type consuming the latter.
    """
    rng = random.Random(seed)
    drawn = rng.randint(1, spec.max_depth)
    depth = depth or drawn
    wires = sorted(spec.signature.wire_types)
    allocator = LabelAllocator()
    inputs = LabelContext(
        (allocator.fresh(), rng.choice(wires))
        for _ in range(rng.randint(0, 2))
    )
    circuit = random_circuit(
        spec.signature, rng, inputs, rng.randint(0, 3), allocator
    )
    reserved = LabelContext(
        (k, w) for k, w in circuit.outputs.items() if rng.random() < 0.3
    )
    target = rng.choice(spec.targets)
    generator = TermGenerator(spec, rng)
    term = generator.generate(
        {}, dict(circuit.outputs.without(reserved)), target, depth
    )
    return GeneratedConfiguration(
        seed=seed,
        depth=depth,
        inputs=inputs,
        circuit=circuit,
        reserved=reserved,
        term=term,
        type=target,
    )
