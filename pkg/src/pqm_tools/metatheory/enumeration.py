"""
Enumeration of small terms by size, and comparison of the algorithmic
checker against the declarative relation on them.
"""
from dataclasses import dataclass
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterator,
    List,
    Mapping,
    Optional,
    Tuple,
)

from ..checker import Checker, DeclarativeOracle, TypeCheckError
from ..syntax import (
    QUBIT,
    App,
    ApplyT,
    BoxT,
    Case,
    Const,
    ForceT,
    Label,
    LabelRef,
    Lam,
    Left,
    Let,
    LetPair,
    LiftT,
    Pair,
    Right,
    Term,
    Type,
    Unit,
    UnitV,
    Var,
)


@dataclass(kw_only=True, frozen=True)
class TermGrammar:
    """
    Term constructors by arity; a term's size is its number of nodes.
    """

    leaves: Tuple[Term, ...]
    unary: Tuple[Callable[[Term], Term], ...]
    binary: Tuple[Callable[[Term, Term], Term], ...]
    ternary: Tuple[Callable[[Term, Term, Term], Term], ...] = ()


def core_grammar(
    gate: str = "H", wire: Type = QUBIT, var: str = "y"
) -> TermGrammar:
    """
    Grammar over one variable, one label, one gate, lift, force, one
    lambda binder, application and pairing.
    """
    return TermGrammar(
        leaves=(Var(var), LabelRef(Label(0)), Const(gate)),
        unary=(
            LiftT,
            ForceT,
            lambda body: Lam(var, wire, body),
        ),
        binary=(App, Pair),
    )


def small_grammar(
    gate: str = "H", wire: Type = QUBIT, names: Tuple[str, str] = ("x", "y")
) -> TermGrammar:
    """
    The core grammar with `()`, `let` and `let (x, y)` over two variable
    names, injections into and `case` over `I + I`, `box` and `apply`.
    """
    first, second = names
    return TermGrammar(
        leaves=(
            Var(first),
            Var(second),
            LabelRef(Label(0)),
            Const(gate),
            UnitV(),
        ),
        unary=(
            LiftT,
            ForceT,
            lambda body: Lam(second, wire, body),
            lambda body: Left(Unit(), Unit(), body),
            lambda body: Right(Unit(), Unit(), body),
            lambda body: BoxT(wire, body),
        ),
        binary=(
            App,
            Pair,
            lambda bound, body: Let(first, bound, body),
            lambda bound, body: Let(second, bound, body),
            lambda bound, body: LetPair(first, second, bound, body),
            ApplyT,
        ),
        ternary=(
            lambda scrutinee, left, right: Case(
                scrutinee, first, left, second, right
            ),
        ),
    )


def _splits(size: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """
    Ordered ways of writing `size` as `parts` positive sizes.
    """
    if parts == 1:
        if size >= 1:
            yield (size,)
        return
    for head in range(1, size - parts + 2):
        for rest in _splits(size - head, parts - 1):
            yield (head,) + rest


class TermEnumerator:
    """
    All terms of a grammar by size, memoized per size. Terms of one size
    are numbered in a fixed order, so large sizes can be sampled evenly
    without building them all.
    """

    grammar: TermGrammar
    cache: Dict[int, List[Term]]
    counts: Dict[int, int]

    def __init__(self, grammar: TermGrammar):
        self.grammar = grammar
        self.cache = {}
        self.counts = {}

    def count(self, size: int) -> int:
        """
        Number of terms with exactly `size` nodes.
        """
        if size < 1:
            return 0
        if size not in self.counts:
            grammar = self.grammar
            total = len(grammar.leaves) if size == 1 else 0
            total += len(grammar.unary) * self.count(size - 1)
            for left, right in _splits(size - 1, 2):
                total += (
                    len(grammar.binary) * self.count(left) * self.count(right)
                )
            for a, b, c in _splits(size - 1, 3):
                total += (
                    len(grammar.ternary)
                    * self.count(a)
                    * self.count(b)
                    * self.count(c)
                )
            self.counts[size] = total
        return self.counts[size]

    def of_size(self, size: int) -> List[Term]:
        """
        Every term with exactly `size` nodes.
        """
        if size < 1:
            return []
        if size not in self.cache:
            terms: List[Term] = []
            if size == 1:
                terms.extend(self.grammar.leaves)
            for build in self.grammar.unary:
                terms.extend(build(t) for t in self.of_size(size - 1))
            for left_size, right_size in _splits(size - 1, 2):
                for combine in self.grammar.binary:
                    for left in self.of_size(left_size):
                        terms.extend(
                            combine(left, right)
                            for right in self.of_size(right_size)
                        )
            for a, b, c in _splits(size - 1, 3):
                for make in self.grammar.ternary:
                    for x in self.of_size(a):
                        for y in self.of_size(b):
                            terms.extend(
                                make(x, y, z) for z in self.of_size(c)
                            )
            self.cache[size] = terms
        return self.cache[size]

    def term_at(self, size: int, index: int) -> Term:
        """
        The term at position `index` of `of_size(size)`, built directly.
        """
        if not 0 <= index < self.count(size):
            raise IndexError(f"no term {index} of size {size}")
        if size in self.cache:
            return self.cache[size][index]
        grammar = self.grammar
        if size == 1:
            if index < len(grammar.leaves):
                return grammar.leaves[index]
            index -= len(grammar.leaves)
        below = self.count(size - 1)
        for build in grammar.unary:
            if index < below:
                return build(self.term_at(size - 1, index))
            index -= below
        for left_size, right_size in _splits(size - 1, 2):
            rights = self.count(right_size)
            block = self.count(left_size) * rights
            for combine in grammar.binary:
                if index < block:
                    i, j = divmod(index, rights)
                    return combine(
                        self.term_at(left_size, i),
                        self.term_at(right_size, j),
                    )
                index -= block
        for a, b, c in _splits(size - 1, 3):
            inner = self.count(b) * self.count(c)
            block = self.count(a) * inner
            for make in grammar.ternary:
                if index < block:
                    i, rest = divmod(index, inner)
                    j, k = divmod(rest, self.count(c))
                    return make(
                        self.term_at(a, i),
                        self.term_at(b, j),
                        self.term_at(c, k),
                    )
                index -= block
        raise AssertionError("index within count but not placed")

    def sample(self, size: int, limit: int) -> List[Term]:
        """
        Every term of `size` nodes when there are at most `limit`,
        otherwise `limit` terms spread evenly over the fixed order.
        """
        total = self.count(size)
        if total <= limit:
            return self.of_size(size)
        return [self.term_at(size, i * total // limit) for i in range(limit)]

    def up_to(self, size: int) -> Iterator[Term]:
        """
        Every term with at most `size` nodes, smallest first.
        """
        for n in range(1, size + 1):
            yield from self.of_size(n)


@dataclass(kw_only=True, frozen=True)
class Disagreement:
    """
    A term the two checkers judge differently.
    """

    term: Term
    algorithmic: Optional[Type]
    declarative: FrozenSet[Type]

    def __str__(self):
        """Print disagreement"""
        found = sorted(str(t) for t in self.declarative)
        return (
            f"{self.term}: algorithmic {self.algorithmic}, "
            f"declarative {found}"
        )


def compare_checkers(
    checker: Checker,
    oracle: DeclarativeOracle,
    gamma: Mapping[str, Type],
    labels: Mapping[Label, str],
    terms: Iterator[Term],
) -> List[Disagreement]:
    """
    Terms on which synthesis and the declarative relation disagree. They
    agree when synthesis rejects exactly the underivable terms and
    otherwise returns the only derivable type.
    """
    disagreements: List[Disagreement] = []
    for term in terms:
        try:
            synthesized: Optional[Type] = checker.synthesize(
                gamma, labels, term
            )[0]
        except TypeCheckError:
            synthesized = None
        derived = oracle.derive(gamma, labels, term)
        expected = frozenset() if synthesized is None else {synthesized}
        if derived != expected:
            disagreements.append(
                Disagreement(
                    term=term, algorithmic=synthesized, declarative=derived
                )
            )
    return disagreements
