"""
Unit tests for fixture families and seeded random generators.
"""

import random

import pytest

from folio.core.exceptions import PreconditionError
from folio.models.formula import Quant, Quantifier, atoms, subformula_at
from folio.models.gadget import AccordionCase
from folio.services.formula_service import distinct_variable_count, is_sentence, is_symbol_loose
from folio.services.gadget_service import is_simple, simple_subformulas
from folio.services.generator_service import (
    chain_sentence,
    clique_sentence,
    f_family,
    random_accordion_instance,
    random_block,
    random_graph,
    random_hypergraph,
    random_sentence,
    random_structure,
)
from folio.services.syntax_service import print_formula, signature_of


class TestFamilies:
    """Test suite for the fixed formula families."""

    def test_f_family_shape(self):
        """F_2 is forall y1 y2 exists x over two edge atoms."""
        assert print_formula(f_family(2)) == "forall y1 y2. exists x. (E1(y1,x) & E2(y2,x))"

    def test_f_family_needs_positive_k(self):
        """k starts at 1."""
        with pytest.raises(PreconditionError):
            f_family(0)

    def test_chain_sentence(self):
        """Chains use one variable per quantifier."""
        phi = chain_sentence(4)
        assert is_sentence(phi)
        assert distinct_variable_count(phi) == 4
        with pytest.raises(PreconditionError):
            chain_sentence(1)

    def test_clique_sentence(self):
        """One atom per pair, joined by the quantifier's junction."""
        phi = clique_sentence(3, Quantifier.FORALL)
        assert isinstance(phi, Quant)
        assert phi.quantifier is Quantifier.FORALL
        assert set(signature_of(phi).relations) == {"F12", "F13", "F23"}


class TestRandomGenerators:
    """Test suite for the seeded random generators."""

    def test_same_seed_same_sentence(self):
        """Generators are deterministic in their seed."""
        first = random_sentence(random.Random(5))
        second = random_sentence(random.Random(5))
        assert first == second

    def test_random_sentences_are_closed(self):
        """Random sentences have no free variables."""
        rng = random.Random(1)
        for _ in range(50):
            assert is_sentence(random_sentence(rng))

    def test_distinct_arguments(self):
        """No atom repeats a variable when asked for distinct arguments."""
        rng = random.Random(7)
        for _ in range(50):
            phi = random_sentence(rng, distinct_arguments=True)
            assert is_sentence(phi)
            assert all(len(set(atom.args)) == len(atom.args) for atom in atoms(phi))

    @pytest.mark.parametrize("case", list(AccordionCase))
    def test_accordion_instance(self, case):
        """The path leads to the only simple subformula, which fits the case."""
        rng = random.Random(8)
        for _ in range(30):
            phi, path = random_accordion_instance(rng, case)
            assert is_sentence(phi)
            assert is_symbol_loose(phi)
            assert [simple.path for simple in simple_subformulas(phi)] == [path]
            node = subformula_at(phi, path)
            assert is_simple(node)
            if case is AccordionCase.DISJUNCTION:
                assert node.quantifier is Quantifier.EXISTS
            if case is AccordionCase.CONJUNCTION:
                assert node.quantifier is Quantifier.FORALL
            if case is not AccordionCase.BASED:
                assert len(node.free) >= 2
                assert {v.sort for v in node.variables} == {"a"}

    def test_random_block(self):
        """Blocks quantify some of their atom variables over a matching junction."""
        rng = random.Random(2)
        for _ in range(30):
            block = random_block(rng)
            assert isinstance(block, Quant)
            assert set(block.variables) <= block.body.free

    def test_random_structure_fits_signature(self):
        """Universes lie within the requested sizes."""
        rng = random.Random(3)
        sig = signature_of(random_sentence(rng))
        structure = random_structure(rng, sig, max_size=3, min_size=1)
        for sort in sig.sorts:
            assert 1 <= len(structure.universe(sort)) <= 3

    def test_random_graph_vertices(self):
        """Graphs use vertices "0".."n-1"."""
        graph = random_graph(random.Random(4), max_vertices=5, min_vertices=2)
        assert 2 <= graph.number_of_nodes() <= 5
        assert all(isinstance(v, str) for v in graph.nodes)

    def test_random_hypergraph_edge(self):
        """The returned edge belongs to the hypergraph."""
        hypergraph, edge = random_hypergraph(random.Random(6))
        assert edge in hypergraph.edges
