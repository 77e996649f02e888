"""
Thickness service: local, quantified and total thickness, and the rewriting of a
formula into an equivalent one that uses thickness-many variables.
"""

import logging
from typing import Optional

from folio.core.exceptions import InvariantViolation, PreconditionError
from folio.models.formula import (
    Atom,
    Formula,
    Not,
    Path,
    Quant,
    Quantifier,
    Variable,
    conjoin,
    disjoin,
    flatten,
    is_literal,
    junction,
    walk,
)
from folio.models.hypergraph import EliminationOrdering, Hypergraph
from folio.schemas.report import AnalysisReport, NodeThickness
from folio.services.formula_service import distinct_variable_count, width
from folio.services.normalize_service import (
    FreshNames,
    is_layered,
    lay,
    map_leaves,
    positively_combined_subformulas,
)
from folio.services.syntax_service import print_formula, signature_of
from folio.services.treewidth_service import (
    elimination_ordering_with_prefix,
    primal_edges,
    treewidth,
)

logger = logging.getLogger(__name__)


def block_parts(phi: Quant) -> list[Formula]:
    """Immediate subformulas phi_1..phi_n of a block exists V (AND phi_i) or forall V (OR phi_i)."""
    return flatten(phi.body, junction(phi.quantifier))


def block_hypergraph(phi: Quant) -> Hypergraph:
    """
    Hypergraph {free(phi_i)} plus the edge free(phi), on the union of the free(phi_i).

    Args:
        phi: Quantifier block

    Returns:
        Hypergraph whose elimination orderings are the orderings of the block
    """
    parts = block_parts(phi)
    edges = [part.free for part in parts] + [phi.free]
    vertices = frozenset().union(*(part.free for part in parts))
    return Hypergraph.from_edges(edges, vertices=vertices)


def _require_layered_block(phi: Formula) -> Quant:
    if not isinstance(phi, Quant):
        raise PreconditionError(
            "expected a quantifier block", context={"formula": print_formula(phi)}
        )
    if not is_layered(phi):
        raise PreconditionError(
            "expected a layered formula", context={"formula": print_formula(phi)}
        )
    return phi


def _local(phi: Quant) -> int:
    return 1 + treewidth(block_hypergraph(phi))


def _quantified(phi: Quant) -> int:
    bound = frozenset(phi.variables)
    edges = [part.free & bound for part in block_parts(phi)]
    return 1 + treewidth(Hypergraph.from_edges(edges, vertices=bound))


def local_thickness(phi: Formula) -> int:
    """
    1 + tw({free(phi_i)} + {free(phi)}) for a layered block.

    Raises:
        PreconditionError: phi is not a layered quantifier block
    """
    return _local(_require_layered_block(phi))


def quantified_thickness(phi: Formula) -> int:
    """
    1 + tw({free(phi_i) & V}) for a layered block with quantified set V.

    Raises:
        PreconditionError: phi is not a layered quantifier block
    """
    return _quantified(_require_layered_block(phi))


def _thickness_layered(phi: Formula) -> int:
    if is_literal(phi):
        return len(phi.free)
    return max([_local(phi)] + [_thickness_layered(part) for part in block_parts(phi)])


def thickness_layered(phi: Formula) -> int:
    """
    Thickness of a layered formula.

    Literals count their free variables; a block takes the maximum of its local
    thickness and the thickness of its parts.

    Raises:
        PreconditionError: phi is not layered
    """
    if not is_literal(phi):
        _require_layered_block(phi)
    return _thickness_layered(phi)


def _thickness_of_laid(laid: Formula) -> int:
    return max(_thickness_layered(leaf) for leaf in positively_combined_subformulas(laid))


def thickness(phi: Formula) -> int:
    """
    Thickness of an arbitrary formula.

    Args:
        phi: Formula

    Returns:
        Maximum of thickness_layered over the positively combined leaves of lay(phi)
    """
    value = _thickness_of_laid(lay(phi))
    logger.debug("Computed thickness", extra={"thickness": value})
    return value


def _measures_of_laid(laid: Formula) -> list[NodeThickness]:
    """Local and quantified thickness of every block of a laid formula, with its path."""
    return [
        NodeThickness(path=list(path), local=_local(node), quantified=_quantified(node))
        for path, node in walk(laid)
        if isinstance(node, Quant)
    ]


def block_orderings(phi: Formula) -> list[tuple[Path, Hypergraph, EliminationOrdering]]:
    """
    Per block of lay(phi): its path, its hypergraph and the elimination ordering
    (starting with the block's free variables) the rewriting uses for it.
    """
    laid = lay(phi)
    result = []
    for path, node in walk(laid):
        if isinstance(node, Quant):
            hypergraph = block_hypergraph(node)
            result.append(
                (path, hypergraph, elimination_ordering_with_prefix(hypergraph, node.free))
            )
    return result


# ---------------------------------------------------------------------------
# Variable elimination
# ---------------------------------------------------------------------------


def _check_ordering(phi: Quant, ordering: EliminationOrdering) -> None:
    covered = frozenset().union(*(part.free for part in block_parts(phi)))
    head = frozenset(ordering.order[: len(phi.free)])
    if set(ordering.order) != covered or len(ordering.order) != len(covered):
        raise PreconditionError(
            "ordering must list the free variables of the parts exactly once",
            context={"formula": print_formula(phi)},
        )
    if head != phi.free:
        raise PreconditionError(
            "free variables of the block must come first in the ordering",
            context={"formula": print_formula(phi)},
        )
    if not ordering.is_valid_for(primal_edges(block_hypergraph(phi))):
        raise PreconditionError(
            "not an elimination ordering of the block hypergraph",
            context={"formula": print_formula(phi)},
        )


def eliminate_last_variable(
    phi: Formula, ordering: EliminationOrdering
) -> tuple[Formula, EliminationOrdering]:
    """
    Push the quantifier of the last variable of the ordering inward.

    The parts containing v_m are grouped into exists v_m (AND group), appended
    after the other parts; the block keeps its remaining variables (and
    disappears when none remain). Dually for forall blocks.

    Args:
        phi: Block exists V (AND phi_i) or forall V (OR phi_i)
        ordering: Elimination ordering of phi (free variables first)

    Returns:
        Equivalent formula and the ordering restricted to v_1..v_{m-1}

    Raises:
        PreconditionError: ordering does not fit phi, or its last variable is
            not quantified by the block
        InvariantViolation: the result is wider than 1 + lowerdeg(e) and the
            widths of the parts
    """
    if not isinstance(phi, Quant):
        raise PreconditionError(
            "expected a quantifier block", context={"formula": print_formula(phi)}
        )
    _check_ordering(phi, ordering)
    if len(ordering.order) == len(phi.free):
        raise PreconditionError(
            "no quantified variable left to eliminate", context={"formula": print_formula(phi)}
        )
    last = ordering.order[-1]
    if last not in phi.variables:
        raise PreconditionError(
            f"last variable {last} is not quantified by the block",
            context={"formula": print_formula(phi)},
        )

    parts = block_parts(phi)
    join = conjoin if phi.quantifier is Quantifier.EXISTS else disjoin
    group = [part for part in parts if last in part.free]
    others = [part for part in parts if last not in part.free]
    inner = Quant(phi.quantifier, (last,), join(group))
    remaining = tuple(v for v in phi.variables if v != last)
    body = join(others + [inner])
    result = Quant(phi.quantifier, remaining, body) if remaining else body

    bound = max([1 + ordering.lowerdeg()] + [width(part) for part in parts])
    if width(result) > bound:
        raise InvariantViolation(
            f"elimination produced width {width(result)}, bound is {bound}",
            context={"formula": print_formula(phi), "variable": str(last)},
        )
    return result, ordering.restrict(len(ordering.order) - 1)


def _reduce_layered(phi: Formula) -> Formula:
    """Rewrite a layered formula into one of width at most its thickness."""
    if is_literal(phi):
        return phi
    join = conjoin if phi.quantifier is Quantifier.EXISTS else disjoin
    block: Formula = Quant(
        phi.quantifier, phi.variables, join([_reduce_layered(p) for p in block_parts(phi)])
    )
    ordering = elimination_ordering_with_prefix(block_hypergraph(block), block.free)
    while len(ordering.order) > len(phi.free):
        block, ordering = eliminate_last_variable(block, ordering)
    return block


# ---------------------------------------------------------------------------
# Name reuse
# ---------------------------------------------------------------------------


class _NameReuse:
    """
    Renames bound variables greedily: each binder takes the first name of its
    sort that is not live at that point, free variables of the input first.
    Binders whose variable does not occur in the body are dropped.
    """

    def __init__(self, free: frozenset[Variable]):
        self.pool: dict[str, list[Variable]] = {}
        for variable in sorted(free):
            self.pool.setdefault(variable.sort, []).append(variable)

    def _pick(self, variable: Variable, live: set[Variable]) -> Variable:
        names = self.pool.setdefault(variable.sort, [])
        for name in names:
            if name not in live:
                return name
        chosen = variable
        if variable in names or variable in live:
            # the original name may already stand for a live variable
            taken = {v.name for v in names} | {v.name for v in live}
            chosen = FreshNames(taken).fresh(variable)
        names.append(chosen)
        return chosen

    def rename(self, phi: Formula, env: dict[Variable, Variable]) -> Formula:
        if isinstance(phi, Quant):
            live = {env.get(v, v) for v in phi.free}
            inner = dict(env)
            bound = []
            for variable in phi.variables:
                if variable not in phi.body.free:
                    continue
                chosen = self._pick(variable, live)
                live.add(chosen)
                inner[variable] = chosen
                bound.append(chosen)
            body = self.rename(phi.body, inner)
            return Quant(phi.quantifier, tuple(bound), body) if bound else body
        if isinstance(phi, Atom):
            return Atom(phi.symbol, tuple(env.get(v, v) for v in phi.args))
        if isinstance(phi, Not):
            return Not(self.rename(phi.child, env))
        return type(phi)(self.rename(phi.left, env), self.rename(phi.right, env))


def reuse_names(phi: Formula) -> Formula:
    """
    Rename the bound variables of a variable-loose formula so that names are reused
    as soon as they are no longer live.
    """
    return _NameReuse(phi.free).rename(phi, {})


def minimize_variables(phi: Formula) -> Formula:
    """
    Equivalent formula using at most thickness(phi) many variables.

    Every layered leaf of lay(phi) is rewritten bottom-up: each block gets an
    elimination ordering that starts with its free variables and reaches the
    treewidth of its hypergraph, and its variables are eliminated last to first.
    Bound variable names are then reused greedily.

    Args:
        phi: Formula

    Returns:
        Equivalent formula (over nonempty universes)

    Raises:
        InvariantViolation: a one-sorted output uses more variables than
            max(thickness(phi), |free(phi)|)
    """
    laid = lay(phi)
    result = reuse_names(map_leaves(laid, _reduce_layered))

    value = _thickness_of_laid(laid)
    bound = max(value, len(phi.free))
    used = distinct_variable_count(result)
    if len(signature_of(result).sorts) <= 1 and used > bound:
        raise InvariantViolation(
            f"rewriting uses {used} variables, thickness bound is {bound}",
            context={"formula": print_formula(phi), "result": print_formula(result)},
        )
    logger.debug(
        "Minimized variables",
        extra={"thickness": value, "before": distinct_variable_count(phi), "after": used},
    )
    return result


def analyze(phi: Formula, minimized: Optional[Formula] = None) -> AnalysisReport:
    """
    Thickness report of a formula.

    Args:
        phi: Formula
        minimized: Result of minimize_variables(phi) when already computed

    Returns:
        AnalysisReport with thickness, widths, variable counts and per-block measures
    """
    minimized = minimize_variables(phi) if minimized is None else minimized
    laid = lay(phi)
    report = AnalysisReport(
        formula=print_formula(phi),
        thickness=_thickness_of_laid(laid),
        width_before=width(phi),
        width_after=width(minimized),
        variables_before=distinct_variable_count(phi),
        variables_used_after=distinct_variable_count(minimized),
        per_node=_measures_of_laid(laid),
    )
    logger.info(
        "Analyzed formula",
        extra={"thickness": report.thickness, "blocks": len(report.per_node)},
    )
    return report
