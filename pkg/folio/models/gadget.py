"""
Gadget models: located simple subformulas, clique witnesses and accordion cases.
"""

from dataclasses import dataclass
from enum import IntEnum

from folio.models.formula import Atom, Path, Quant, Quantifier, Variable


class AccordionCase(IntEnum):
    """How the partner sentence psi is obtained from phi."""

    BASED = 1
    DISJUNCTION = 2
    CONJUNCTION = 3


@dataclass(frozen=True)
class SimpleSubformula:
    """A subformula exists X (AND atoms) or forall Y (OR atoms) and where it sits."""

    path: Path
    formula: Quant

    @property
    def quantifier(self) -> Quantifier:
        return self.formula.quantifier

    @property
    def quantified(self) -> frozenset[Variable]:
        return frozenset(self.formula.variables)

    @property
    def free(self) -> frozenset[Variable]:
        return self.formula.free


@dataclass(frozen=True)
class CliqueWitness:
    """
    Variables W of one quantifier kind, every pair of which shares an atom of
    the simple subformula at `path`.
    """

    variables: tuple[Variable, ...]
    atoms: tuple[Atom, ...]
    path: Path
    quantifier: Quantifier
