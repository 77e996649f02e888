"""
Formula model: immutable AST for multi-sorted relational first-order logic.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence, Union

from folio.core.exceptions import PreconditionError

DEFAULT_SORT = "U"

Path = tuple[int, ...]


class Quantifier(str, Enum):
    """Quantifier enumeration."""

    EXISTS = "exists"
    FORALL = "forall"

    @property
    def dual(self) -> "Quantifier":
        return Quantifier.FORALL if self is Quantifier.EXISTS else Quantifier.EXISTS


@dataclass(frozen=True, order=True, slots=True)
class Variable:
    """A variable; two variables are equal when name and sort agree."""

    name: str
    sort: str = DEFAULT_SORT

    def __str__(self) -> str:
        if self.sort == DEFAULT_SORT:
            return self.name
        return f"{self.name}:{self.sort}"


@dataclass(frozen=True, slots=True)
class Atom:
    """Relation symbol applied to a sequence of variables."""

    symbol: str
    args: tuple[Variable, ...]
    free: frozenset[Variable] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.args:
            raise PreconditionError(f"atom {self.symbol} has no arguments")
        object.__setattr__(self, "free", frozenset(self.args))


@dataclass(frozen=True, slots=True)
class Not:
    """Negation."""

    child: "Formula"
    free: frozenset[Variable] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "free", self.child.free)


@dataclass(frozen=True, slots=True)
class And:
    """Binary conjunction."""

    left: "Formula"
    right: "Formula"
    free: frozenset[Variable] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "free", self.left.free | self.right.free)


@dataclass(frozen=True, slots=True)
class Or:
    """Binary disjunction."""

    left: "Formula"
    right: "Formula"
    free: frozenset[Variable] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "free", self.left.free | self.right.free)


@dataclass(frozen=True, slots=True)
class Quant:
    """Block quantifier: Q v1 ... vn. body, semantically the nesting Qv1 ... Qvn body."""

    quantifier: Quantifier
    variables: tuple[Variable, ...]
    body: "Formula"
    free: frozenset[Variable] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.variables:
            raise PreconditionError("quantifier block must bind at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise PreconditionError(
                "quantifier block binds a variable twice",
                context={"variables": [str(v) for v in self.variables]},
            )
        object.__setattr__(self, "free", self.body.free - frozenset(self.variables))


Formula = Union[Atom, Not, And, Or, Quant]


def children(phi: Formula) -> tuple[Formula, ...]:
    """Immediate subformulas in path order."""
    if isinstance(phi, Atom):
        return ()
    if isinstance(phi, Not):
        return (phi.child,)
    if isinstance(phi, (And, Or)):
        return (phi.left, phi.right)
    return (phi.body,)


def with_children(phi: Formula, new_children: Sequence[Formula]) -> Formula:
    """Rebuild a node of the same kind over new immediate subformulas."""
    if isinstance(phi, Atom):
        return phi
    if isinstance(phi, Not):
        return Not(new_children[0])
    if isinstance(phi, And):
        return And(new_children[0], new_children[1])
    if isinstance(phi, Or):
        return Or(new_children[0], new_children[1])
    return Quant(phi.quantifier, phi.variables, new_children[0])


def walk(phi: Formula, path: Path = ()) -> Iterator[tuple[Path, Formula]]:
    """Yield (path, subformula) pairs in pre-order, left to right."""
    yield path, phi
    for index, child in enumerate(children(phi)):
        yield from walk(child, path + (index,))


def node_count(phi: Formula) -> int:
    return sum(1 for _ in walk(phi))


def subformula_at(phi: Formula, path: Path) -> Formula:
    """
    Follow a path of child indices from the root.

    Args:
        phi: Root formula
        path: Child indices (Not and Quant have child 0, And/Or have 0 and 1)

    Returns:
        The subformula at the path
    """
    node = phi
    for index in path:
        kids = children(node)
        if index < 0 or index >= len(kids):
            raise PreconditionError(
                "path does not address a subformula", context={"path": list(path)}
            )
        node = kids[index]
    return node


def replace_at(phi: Formula, path: Path, replacement: Formula) -> Formula:
    """Return phi with the subformula at path replaced."""
    if not path:
        return replacement
    kids = list(children(phi))
    index = path[0]
    if index < 0 or index >= len(kids):
        raise PreconditionError(
            "path does not address a subformula", context={"path": list(path)}
        )
    kids[index] = replace_at(kids[index], path[1:], replacement)
    return with_children(phi, kids)


def conjoin(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction of a nonempty sequence."""
    return _fold(parts, And)


def disjoin(parts: Iterable[Formula]) -> Formula:
    """Left-nested disjunction of a nonempty sequence."""
    return _fold(parts, Or)


def _fold(parts: Iterable[Formula], node: type) -> Formula:
    iterator = iter(parts)
    try:
        result = next(iterator)
    except StopIteration:
        raise PreconditionError(f"cannot build an empty {node.__name__}") from None
    for part in iterator:
        result = node(result, part)
    return result


def flatten(phi: Formula, node: type) -> list[Formula]:
    """Operands of a maximal And-chain (or Or-chain), left to right."""
    if isinstance(phi, node):
        return flatten(phi.left, node) + flatten(phi.right, node)
    return [phi]


def junction(kind: Quantifier) -> type:
    """The connective a block of the given quantifier is layered over."""
    return And if kind is Quantifier.EXISTS else Or


def atoms(phi: Formula) -> list[Atom]:
    """Atom occurrences, left to right."""
    return [node for _, node in walk(phi) if isinstance(node, Atom)]


def variables(phi: Formula) -> frozenset[Variable]:
    """Every variable occurring in phi, free, bound or only listed in a block."""
    found: set[Variable] = set()
    for _, node in walk(phi):
        if isinstance(node, Atom):
            found.update(node.args)
        elif isinstance(node, Quant):
            found.update(node.variables)
    return frozenset(found)


def is_literal(phi: Formula) -> bool:
    return isinstance(phi, Atom) or (isinstance(phi, Not) and isinstance(phi.child, Atom))
