"""
Formula service: free variables, width, looseness and other syntactic measures.
"""

from collections import Counter

from folio.models.formula import (
    And,
    Atom,
    Formula,
    Not,
    Or,
    Quant,
    Variable,
    atoms,
    children,
    variables,
    walk,
    with_children,
)


def free_vars(phi: Formula) -> frozenset[Variable]:
    """
    Free variables of phi; a block quantifier binds its whole sequence.

    Args:
        phi: Formula

    Returns:
        Set of free variables
    """
    return phi.free


def width(phi: Formula) -> int:
    """Maximum number of free variables over all subformulas, phi included."""
    return max(len(node.free) for _, node in walk(phi))


def quantification_counts(phi: Formula) -> Counter:
    counts: Counter = Counter()
    for _, node in walk(phi):
        if isinstance(node, Quant):
            counts.update(node.variables)
    return counts


def is_variable_loose(phi: Formula) -> bool:
    """No variable is quantified twice, nor both quantified and free."""
    counts = quantification_counts(phi)
    if any(n > 1 for n in counts.values()):
        return False
    return not (set(counts) & phi.free)


def is_symbol_loose(phi: Formula) -> bool:
    """No relation symbol occurs in more than one atom."""
    counts = Counter(atom.symbol for atom in atoms(phi))
    return all(n == 1 for n in counts.values())


def is_loose(phi: Formula) -> bool:
    return is_variable_loose(phi) and is_symbol_loose(phi)


def is_positive(phi: Formula) -> bool:
    return not any(isinstance(node, Not) for _, node in walk(phi))


def is_sentence(phi: Formula) -> bool:
    return not phi.free


def is_nnf(phi: Formula) -> bool:
    """Negation occurs only directly above atoms."""
    return all(
        isinstance(node.child, Atom) for _, node in walk(phi) if isinstance(node, Not)
    )


def dual(phi: Formula) -> Formula:
    """Swap conjunction with disjunction and existential with universal blocks."""
    if isinstance(phi, Atom):
        return phi
    if isinstance(phi, And):
        return Or(dual(phi.left), dual(phi.right))
    if isinstance(phi, Or):
        return And(dual(phi.left), dual(phi.right))
    if isinstance(phi, Quant):
        return Quant(phi.quantifier.dual, phi.variables, dual(phi.body))
    return with_children(phi, [dual(c) for c in children(phi)])


def distinct_variable_count(phi: Formula) -> int:
    """Number of distinct variables occurring anywhere in phi."""
    return len(variables(phi))


def symbols(phi: Formula) -> list[str]:
    """Relation symbols in occurrence order."""
    return [atom.symbol for atom in atoms(phi)]
