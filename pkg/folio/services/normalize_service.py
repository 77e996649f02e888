"""
Normalize service: syntactic transformations, negation normal form and the
organized/layered normal forms.

Equivalence claims assume every universe is nonempty; vacuous quantifiers are
dropped.
"""

import itertools
import logging
import re
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Optional, Sequence

from folio.core.exceptions import PreconditionError, SignatureError
from folio.models.formula import (
    And,
    Atom,
    Formula,
    Not,
    Or,
    Path,
    Quant,
    Quantifier,
    Variable,
    atoms,
    conjoin,
    disjoin,
    flatten,
    is_literal,
    junction,
    replace_at,
    subformula_at,
    variables,
)
from folio.models.hypergraph import Hypergraph
from folio.models.signature import Signature
from folio.schemas.rewrite import RewriteDirectionEnum, RewriteRuleEnum, RewriteStep
from folio.services.formula_service import is_variable_loose
from folio.services.syntax_service import print_formula, signature_of
from folio.services.treewidth_service import s_connected

logger = logging.getLogger(__name__)

Trace = Optional[list[RewriteStep]]


def _record(trace: Trace, rule: RewriteRuleEnum, path: Path, phase: str, **extra) -> None:
    if trace is not None:
        trace.append(RewriteStep(rule=rule, path=list(path), phase=phase, **extra))


# ---------------------------------------------------------------------------
# Negation normal form
# ---------------------------------------------------------------------------


def _push_negation(phi: Not) -> tuple[Formula, Optional[str]]:
    """One De Morgan step (or double-negation removal) at a negated non-atom."""
    inner = phi.child
    if isinstance(inner, Not):
        return inner.child, "double_negation"
    if isinstance(inner, And):
        return Or(Not(inner.left), Not(inner.right)), None
    if isinstance(inner, Or):
        return And(Not(inner.left), Not(inner.right)), None
    if isinstance(inner, Quant):
        return Quant(inner.quantifier.dual, inner.variables, Not(inner.body)), None
    raise PreconditionError("negation of an atom cannot be pushed further")


def nnf(phi: Formula, trace: Trace = None) -> Formula:
    """
    Push negations down to the atoms.

    Steps are applied top-down; when a trace list is given every step is
    recorded with its path in the formula as it stood when the step fired, so
    replaying the trace with apply_transformation reproduces the result.

    Args:
        phi: Formula
        trace: Optional list receiving RewriteStep records

    Returns:
        Equivalent formula with Not only directly above atoms
    """
    return _nnf(phi, (), trace)


def _nnf(phi: Formula, path: Path, trace: Trace) -> Formula:
    while isinstance(phi, Not) and not isinstance(phi.child, Atom):
        phi, operation = _push_negation(phi)
        _record(trace, RewriteRuleEnum.EPSILON, path, "nnf", operation=operation)
    if isinstance(phi, (And, Or)):
        return type(phi)(
            _nnf(phi.left, path + (0,), trace), _nnf(phi.right, path + (1,), trace)
        )
    if isinstance(phi, Quant):
        return Quant(phi.quantifier, phi.variables, _nnf(phi.body, path + (0,), trace))
    return phi


# ---------------------------------------------------------------------------
# Organized formulas
# ---------------------------------------------------------------------------


def is_organized(phi: Formula) -> bool:
    """
    Atoms and negated atoms are organized; so is exists v (AND phi_i) or
    forall v (OR phi_i) when v is free in every phi_i and every phi_i is
    organized.
    """
    if is_literal(phi):
        return True
    if not isinstance(phi, Quant) or len(phi.variables) != 1:
        return False
    v = phi.variables[0]
    parts = flatten(phi.body, junction(phi.quantifier))
    return all(v in part.free and is_organized(part) for part in parts)


Junctions = tuple[tuple[Formula, ...], ...]


def _group(kind: Quantifier, variable: Variable, members: Sequence[Formula]) -> Junctions:
    """
    Quantify one variable over a junction of organized formulas.

    The members containing the variable become one block placed where the first
    of them stood; the others stay outside. Without members the quantifier is
    vacuous and disappears.
    """
    inside = [m for m in members if variable in m.free]
    if not inside:
        return tuple(members)
    join = conjoin if kind is Quantifier.EXISTS else disjoin
    grouped = Quant(kind, (variable,), join(inside))
    result: list[Formula] = []
    placed = False
    for member in members:
        if variable in member.free:
            if not placed:
                result.append(grouped)
                placed = True
        else:
            result.append(member)
    return tuple(result)


def _product(blocks: Junctions) -> Junctions:
    """Distribute: a CNF's clauses become a DNF's terms and vice versa."""
    return tuple(tuple(choice) for choice in itertools.product(*blocks))


@lru_cache(maxsize=4096)
def _dnf(phi: Formula) -> Junctions:
    """DNF (terms of organized formulas) of an NNF formula."""
    if is_literal(phi):
        return ((phi,),)
    if isinstance(phi, Or):
        return _dnf(phi.left) + _dnf(phi.right)
    if isinstance(phi, And):
        return tuple(a + b for a in _dnf(phi.left) for b in _dnf(phi.right))
    if isinstance(phi, Quant) and phi.quantifier is Quantifier.EXISTS:
        terms = _dnf(phi.body)
        for variable in reversed(phi.variables):
            terms = tuple(_group(Quantifier.EXISTS, variable, t) for t in terms)
        return terms
    return _product(_cnf(phi))


@lru_cache(maxsize=4096)
def _cnf(phi: Formula) -> Junctions:
    """CNF (clauses of organized formulas) of an NNF formula."""
    if is_literal(phi):
        return ((phi,),)
    if isinstance(phi, And):
        return _cnf(phi.left) + _cnf(phi.right)
    if isinstance(phi, Or):
        return tuple(a + b for a in _cnf(phi.left) for b in _cnf(phi.right))
    if isinstance(phi, Quant) and phi.quantifier is Quantifier.FORALL:
        clauses = _cnf(phi.body)
        for variable in reversed(phi.variables):
            clauses = tuple(_group(Quantifier.FORALL, variable, c) for c in clauses)
        return clauses
    return _product(_dnf(phi))


def _record_organize(phi: Formula, trace: Trace) -> None:
    """Record where distribution and quantifier splitting act on the NNF input."""
    if trace is None:
        return
    stack: list[tuple[Path, Formula]] = [((), phi)]
    while stack:
        path, node = stack.pop()
        if isinstance(node, Quant):
            inner = Or if node.quantifier is Quantifier.EXISTS else And
            if isinstance(node.body, inner):
                _record(trace, RewriteRuleEnum.BETA, path, "organize")
            _record(trace, RewriteRuleEnum.GAMMA, path, "organize")
            stack.append((path + (0,), node.body))
        elif isinstance(node, (And, Or)):
            other = Or if isinstance(node, And) else And
            if isinstance(node.left, other) or isinstance(node.right, other):
                _record(trace, RewriteRuleEnum.DELTA, path, "organize")
            stack.append((path + (1,), node.right))
            stack.append((path + (0,), node.left))


def organize(phi: Formula, trace: Trace = None) -> Formula:
    """
    Positive combination of organized formulas equivalent to phi.

    Args:
        phi: Formula
        trace: Optional list receiving RewriteStep records

    Returns:
        Left-nested disjunction of left-nested conjunctions of organized formulas
    """
    normal = nnf(phi, trace)
    _record_organize(normal, trace)
    terms = _dnf(normal)
    result = disjoin(conjoin(term) for term in terms)
    logger.debug("Organized formula", extra={"terms": len(terms)})
    return result


# ---------------------------------------------------------------------------
# Variable renaming
# ---------------------------------------------------------------------------


def rename_free(phi: Formula, mapping: Mapping[Variable, Variable]) -> Formula:
    """
    Rename free occurrences of variables.

    The targets must not be captured by binders inside phi; callers pass
    fresh names.
    """
    if not mapping:
        return phi
    if isinstance(phi, Atom):
        return Atom(phi.symbol, tuple(mapping.get(v, v) for v in phi.args))
    if isinstance(phi, Not):
        return Not(rename_free(phi.child, mapping))
    if isinstance(phi, (And, Or)):
        return type(phi)(rename_free(phi.left, mapping), rename_free(phi.right, mapping))
    inner = {k: v for k, v in mapping.items() if k not in phi.variables}
    return Quant(phi.quantifier, phi.variables, rename_free(phi.body, inner))


_SUFFIX = re.compile(r"\$\d+$")


class FreshNames:
    """Counter-suffix name supply: x, x$1, x$2, ..."""

    def __init__(self, taken: set[str]):
        self.taken = set(taken)

    def fresh(self, variable: Variable) -> Variable:
        base = _SUFFIX.sub("", variable.name)
        counter = 1
        while f"{base}${counter}" in self.taken:
            counter += 1
        name = f"{base}${counter}"
        self.taken.add(name)
        return Variable(name, variable.sort)


def loosen_variables(phi: Formula) -> Formula:
    """
    Rename bound variables so that no variable is quantified twice and none is
    both free and quantified. Traversal is depth-first, left to right.
    """
    names = FreshNames({v.name for v in variables(phi)})
    seen: set[Variable] = set(phi.free)

    def visit(node: Formula) -> Formula:
        if isinstance(node, Atom):
            return node
        if isinstance(node, Not):
            return Not(visit(node.child))
        if isinstance(node, (And, Or)):
            left = visit(node.left)
            return type(node)(left, visit(node.right))
        mapping = {}
        bound = []
        for v in node.variables:
            if v in seen:
                mapping[v] = names.fresh(v)
                bound.append(mapping[v])
            else:
                bound.append(v)
            seen.add(bound[-1])
        return Quant(node.quantifier, tuple(bound), visit(rename_free(node.body, mapping)))

    return visit(phi)


# ---------------------------------------------------------------------------
# Layered formulas
# ---------------------------------------------------------------------------


def _layered(phi: Formula, kind: Optional[Quantifier]) -> bool:
    """phi is kind-layered (kind None accepts either)."""
    if is_literal(phi):
        return True
    if not isinstance(phi, Quant):
        return False
    if kind is not None and phi.quantifier is not kind:
        return False
    parts = flatten(phi.body, junction(phi.quantifier))
    hypergraph = Hypergraph.from_edges(p.free for p in parts)
    bound = frozenset(phi.variables)
    if not bound <= hypergraph.vertices:
        return False
    if not s_connected(hypergraph, bound):
        return False
    return all(_layered(p, phi.quantifier.dual) for p in parts)


def is_layered(phi: Formula) -> bool:
    """
    phi is variable-loose and an exists- or forall-layered formula: a block
    exists X over a conjunction of forall-layered formulas (dually for forall)
    whose free-variable hypergraph is X-connected.
    """
    return is_variable_loose(phi) and _layered(phi, None)


def _sort_key(phi: Formula) -> str:
    return print_formula(phi)


def _merge(phi: Formula) -> Formula:
    if is_literal(phi):
        return phi
    connective = junction(phi.quantifier)
    bound = list(phi.variables)
    parts: list[Formula] = []
    for part in flatten(phi.body, connective):
        merged = _merge(part)
        if isinstance(merged, Quant) and merged.quantifier is phi.quantifier:
            bound.extend(merged.variables)
            parts.extend(flatten(merged.body, connective))
        else:
            parts.append(merged)
    parts.sort(key=_sort_key)
    join = conjoin if connective is And else disjoin
    return Quant(phi.quantifier, tuple(bound), join(parts))


def layer(phi: Formula) -> Formula:
    """
    Layered formula equivalent to an organized one.

    Bound variables are first renamed apart, then adjacent blocks of the same
    quantifier are merged; the parts of each block are ordered by printed form.

    Raises:
        PreconditionError: phi is not organized
    """
    if not is_organized(phi):
        raise PreconditionError(
            "layer expects an organized formula", context={"formula": print_formula(phi)}
        )
    return _merge(loosen_variables(phi))


def positively_combined_subformulas(phi: Formula) -> list[Formula]:
    """Maximal non-junction subformulas reachable from the root through And/Or only."""
    if isinstance(phi, (And, Or)):
        return positively_combined_subformulas(phi.left) + positively_combined_subformulas(
            phi.right
        )
    return [phi]


def positively_combined_paths(phi: Formula, path: Path = ()) -> list[Path]:
    """Paths of the positively combined subformulas, left to right."""
    if isinstance(phi, (And, Or)):
        return positively_combined_paths(phi.left, path + (0,)) + positively_combined_paths(
            phi.right, path + (1,)
        )
    return [path]


def map_leaves(phi: Formula, function: Callable[[Formula], Formula]) -> Formula:
    """Apply a function to every positively combined subformula."""
    if isinstance(phi, (And, Or)):
        return type(phi)(map_leaves(phi.left, function), map_leaves(phi.right, function))
    return function(phi)


def lay(phi: Formula, trace: Trace = None) -> Formula:
    """
    Positive combination of layered formulas equivalent to phi.

    Args:
        phi: Formula
        trace: Optional list receiving RewriteStep records

    Returns:
        organize(phi) with every positively combined leaf layered
    """
    result = map_leaves(organize(phi, trace), layer)
    logger.debug(
        "Layered formula", extra={"leaves": len(positively_combined_subformulas(result))}
    )
    return result


# ---------------------------------------------------------------------------
# Replacement
# ---------------------------------------------------------------------------


def _check_arities(result: Formula, sig: Optional[Signature]) -> None:
    if sig is None:
        signature_of(result)
        return
    for atom in atoms(result):
        expected = sig.arity(atom.symbol)
        if expected != tuple(v.sort for v in atom.args):
            raise SignatureError(
                f"arity mismatch: {atom.symbol} has arity {list(expected)}",
                context={"relation": atom.symbol},
            )


def replace_symbols(
    phi: Formula, mapping: Mapping[int, str], sig: Optional[Signature] = None
) -> Formula:
    """
    Substitute relation symbols occurrence by occurrence.

    Args:
        phi: Formula
        mapping: Atom occurrence index (left to right, from 0) to new symbol
        sig: Signature the new symbols must fit; None only checks consistency

    Returns:
        Formula of identical shape with the selected atoms relabeled

    Raises:
        SignatureError: a new symbol's arity differs from the atom it replaces
    """
    counter = itertools.count()

    def visit(node: Formula) -> Formula:
        if isinstance(node, Atom):
            index = next(counter)
            return Atom(mapping.get(index, node.symbol), node.args)
        if isinstance(node, Not):
            return Not(visit(node.child))
        if isinstance(node, (And, Or)):
            left = visit(node.left)
            return type(node)(left, visit(node.right))
        return Quant(node.quantifier, node.variables, visit(node.body))

    result = visit(phi)
    _check_arities(result, sig)
    return result


def enumerate_replacements(phi: Formula, sig: Signature) -> Iterator[Formula]:
    """
    Every formula over sig obtainable from phi by replacement.

    Args:
        phi: Formula
        sig: Target signature

    Returns:
        Iterator over distinct formulas, in lexicographic order of the choices
    """
    occurrences = atoms(phi)
    candidates = []
    for atom in occurrences:
        sorts = tuple(v.sort for v in atom.args)
        candidates.append(sorted(n for n, a in sig.relations.items() if a == sorts))
    seen: set[Formula] = set()
    for choice in itertools.product(*candidates):
        result = replace_symbols(phi, dict(enumerate(choice)), sig)
        if result not in seen:
            seen.add(result)
            yield result


# ---------------------------------------------------------------------------
# Single transformation steps
# ---------------------------------------------------------------------------


def _mismatch(step: RewriteStep, node: Formula) -> PreconditionError:
    return PreconditionError(
        f"rule {step.rule.value} ({step.direction.value}) does not match at path {step.path}",
        context={"formula": print_formula(node)},
    )


def _alpha(node: Formula, step: RewriteStep) -> Formula:
    if not isinstance(node, (And, Or)):
        raise _mismatch(step, node)
    kind = type(node)
    if (step.operation or "commute") == "commute":
        return kind(node.right, node.left)
    if step.operation != "associate":
        raise _mismatch(step, node)
    if step.direction is RewriteDirectionEnum.FORWARD:
        if not isinstance(node.right, kind):
            raise _mismatch(step, node)
        return kind(kind(node.left, node.right.left), node.right.right)
    if not isinstance(node.left, kind):
        raise _mismatch(step, node)
    return kind(node.left.left, kind(node.left.right, node.right))


def _beta(node: Formula, step: RewriteStep) -> Formula:
    if step.direction is RewriteDirectionEnum.FORWARD:
        if not isinstance(node, Quant):
            raise _mismatch(step, node)
        inner = Or if node.quantifier is Quantifier.EXISTS else And
        if not isinstance(node.body, inner):
            raise _mismatch(step, node)
        return inner(
            Quant(node.quantifier, node.variables, node.body.left),
            Quant(node.quantifier, node.variables, node.body.right),
        )
    if not isinstance(node, (And, Or)):
        raise _mismatch(step, node)
    left, right = node.left, node.right
    kind = Quantifier.EXISTS if isinstance(node, Or) else Quantifier.FORALL
    if not (
        isinstance(left, Quant)
        and isinstance(right, Quant)
        and left.quantifier is kind
        and right.quantifier is kind
        and left.variables == right.variables
    ):
        raise _mismatch(step, node)
    return Quant(kind, left.variables, type(node)(left.body, right.body))


def _gamma(node: Formula, step: RewriteStep) -> Formula:
    if step.direction is RewriteDirectionEnum.FORWARD:
        if not isinstance(node, Quant):
            raise _mismatch(step, node)
        bound = set(node.variables)
        inner = And if node.quantifier is Quantifier.EXISTS else Or
        body = node.body
        if isinstance(body, inner) and not bound & body.right.free and bound & body.left.free:
            return inner(Quant(node.quantifier, node.variables, body.left), body.right)
        if not bound & body.free:
            return body
        raise _mismatch(step, node)
    if not isinstance(node, (And, Or)) or not isinstance(node.left, Quant):
        raise _mismatch(step, node)
    quant = node.left
    expected = Quantifier.EXISTS if isinstance(node, And) else Quantifier.FORALL
    if quant.quantifier is not expected or set(quant.variables) & node.right.free:
        raise _mismatch(step, node)
    return Quant(quant.quantifier, quant.variables, type(node)(quant.body, node.right))


def _delta(node: Formula, step: RewriteStep) -> Formula:
    if not isinstance(node, (And, Or)):
        raise _mismatch(step, node)
    outer = type(node)
    inner = Or if outer is And else And
    if step.direction is RewriteDirectionEnum.FORWARD:
        if not isinstance(node.right, inner):
            raise _mismatch(step, node)
        return inner(outer(node.left, node.right.left), outer(node.left, node.right.right))
    # backward: (a o b) i (a o c)  ->  a o (b i c), where node is the i-node
    inner, outer = outer, inner
    left, right = node.left, node.right
    if not (isinstance(left, outer) and isinstance(right, outer) and left.left == right.left):
        raise _mismatch(step, node)
    return outer(left.left, inner(left.right, right.right))


def _epsilon(node: Formula, step: RewriteStep) -> Formula:
    if step.direction is RewriteDirectionEnum.FORWARD:
        if not isinstance(node, Not) or isinstance(node.child, Atom):
            raise _mismatch(step, node)
        if step.operation == "double_negation" and not isinstance(node.child, Not):
            raise _mismatch(step, node)
        if isinstance(node.child, Not) and step.operation != "double_negation":
            raise _mismatch(step, node)
        return _push_negation(node)[0]
    if step.operation == "double_negation":
        return Not(Not(node))
    if isinstance(node, Quant) and isinstance(node.body, Not):
        return Not(Quant(node.quantifier.dual, node.variables, node.body.child))
    if isinstance(node, (And, Or)) and isinstance(node.left, Not) and isinstance(node.right, Not):
        dual_kind = Or if isinstance(node, And) else And
        return Not(dual_kind(node.left.child, node.right.child))
    raise _mismatch(step, node)


def _replacement(node: Formula, step: RewriteStep) -> Formula:
    if not isinstance(node, Atom) or not step.symbol:
        raise _mismatch(step, node)
    return Atom(step.symbol, node.args)


_RULES: dict[RewriteRuleEnum, Callable[[Formula, RewriteStep], Formula]] = {
    RewriteRuleEnum.ALPHA: _alpha,
    RewriteRuleEnum.BETA: _beta,
    RewriteRuleEnum.GAMMA: _gamma,
    RewriteRuleEnum.DELTA: _delta,
    RewriteRuleEnum.EPSILON: _epsilon,
    RewriteRuleEnum.REPLACEMENT: _replacement,
}


def apply_transformation(
    phi: Formula, step: RewriteStep, sig: Optional[Signature] = None
) -> Formula:
    """
    Apply one transformation at the step's path.

    Args:
        phi: Formula
        step: Rule, path and direction (plus sub-rule or symbol where relevant)
        sig: Signature checked for replacement steps

    Returns:
        Rewritten formula

    Raises:
        PreconditionError: the rule pattern does not match at the path
    """
    path = tuple(step.path)
    node = subformula_at(phi, path)
    rewritten = _RULES[step.rule](node, step)
    result = replace_at(phi, path, rewritten)
    if step.rule is RewriteRuleEnum.REPLACEMENT:
        _check_arities(result, sig)
    return result
