"""
Semantics service: the brute-force Tarskian evaluator every other engine is
checked against.
"""

import itertools
from typing import Mapping, Optional

from folio.core.exceptions import EvaluationError, SignatureError
from folio.models.formula import And, Atom, Formula, Not, Or, Quant, Quantifier, Variable
from folio.models.structure import Element, Structure


def naive_eval(
    structure: Structure, phi: Formula, assignment: Optional[Mapping[Variable, Element]] = None
) -> bool:
    """
    Decide structure, assignment |= phi by exhaustive recursion.

    Args:
        structure: Finite structure over phi's signature
        phi: Formula
        assignment: Values for (at least) the free variables of phi

    Returns:
        Truth value

    Raises:
        EvaluationError: a free variable is unassigned or assigned outside its sort
        SignatureError: phi uses a symbol the structure does not interpret
    """
    assignment = dict(assignment or {})
    for variable in phi.free:
        if variable not in assignment:
            raise EvaluationError(
                f"free variable {variable} is not assigned",
                context={"variable": str(variable)},
            )
    for variable, value in assignment.items():
        if value not in structure.universe(variable.sort):
            raise EvaluationError(
                f"value {value!r} of {variable} is outside the universe of sort {variable.sort}",
                context={"variable": str(variable)},
            )
    return _eval(structure, phi, assignment)


def _eval(structure: Structure, phi: Formula, f: dict[Variable, Element]) -> bool:
    if isinstance(phi, Atom):
        if not structure.signature.has(phi.symbol):
            raise SignatureError(
                f"structure does not interpret {phi.symbol}",
                context={"relation": phi.symbol},
            )
        arity = structure.signature.arity(phi.symbol)
        if arity != tuple(v.sort for v in phi.args):
            raise EvaluationError(
                f"sort mismatch in atom {phi.symbol}", context={"relation": phi.symbol}
            )
        return tuple(f[v] for v in phi.args) in structure.relation(phi.symbol)
    if isinstance(phi, Not):
        return not _eval(structure, phi.child, f)
    if isinstance(phi, And):
        return _eval(structure, phi.left, f) and _eval(structure, phi.right, f)
    if isinstance(phi, Or):
        return _eval(structure, phi.left, f) or _eval(structure, phi.right, f)

    domains = [structure.universe(v.sort) for v in phi.variables]
    results = (
        _eval(structure, phi.body, {**f, **dict(zip(phi.variables, values))})
        for values in itertools.product(*domains)
    )
    if phi.quantifier is Quantifier.EXISTS:
        return any(results)
    return all(results)


def equivalent_on(structure: Structure, phi: Formula, psi: Formula) -> bool:
    """
    Check that phi and psi agree on every assignment of their free variables.

    Args:
        structure: Structure interpreting both formulas
        phi: First formula
        psi: Second formula

    Returns:
        True when no assignment separates the two formulas
    """
    for f in structure.assignments(sorted(phi.free | psi.free)):
        if naive_eval(structure, phi, f) != naive_eval(structure, psi, f):
            return False
    return True
