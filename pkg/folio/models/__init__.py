"""
Domain models initialization.
"""

from folio.models.formula import (
    DEFAULT_SORT,
    And,
    Atom,
    Formula,
    Not,
    Or,
    Quant,
    Quantifier,
    Variable,
)
from folio.models.gadget import AccordionCase, CliqueWitness, SimpleSubformula
from folio.models.hypergraph import EliminationOrdering, Hypergraph
from folio.models.relation_table import RelationTable
from folio.models.signature import Signature
from folio.models.structure import Assignment, Structure

__all__ = [
    "DEFAULT_SORT",
    "AccordionCase",
    "And",
    "Assignment",
    "Atom",
    "CliqueWitness",
    "EliminationOrdering",
    "Formula",
    "Hypergraph",
    "Not",
    "Or",
    "Quant",
    "Quantifier",
    "RelationTable",
    "Signature",
    "SimpleSubformula",
    "Structure",
    "Variable",
]
