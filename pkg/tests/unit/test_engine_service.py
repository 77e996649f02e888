"""
Unit tests for the relational evaluator and the thickness-based model checker.
"""

import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folio.core.exceptions import PreconditionError, SignatureError
from folio.models.formula import Variable, node_count
from folio.models.signature import Signature
from folio.models.structure import Structure
from folio.schemas.run_config import EngineEnum
from folio.services.engine_service import (
    bounded_var_eval,
    fpt_model_check,
    full_product_table,
    run_engine,
)
from folio.services.generator_service import chain_sentence, f_family, random_structure
from folio.services.semantics_service import naive_eval
from folio.services.syntax_service import parse_formula
from tests.strategies import sentences, structures

x, y = Variable("x"), Variable("y")


class TestBoundedVarEval:
    """Test suite for bounded_var_eval."""

    def test_atom_table(self, path_structure):
        """An atom yields its relation over the sorted free variables."""
        table = bounded_var_eval(path_structure, parse_formula("E(x,y)"))
        assert table.schema == (x, y)
        assert table.rows == frozenset({("1", "2"), ("2", "3")})

    def test_repeated_argument(self, loop_structure, path_structure):
        """E(x,x) keeps only the diagonal."""
        phi = parse_formula("E(x,x)")
        assert bounded_var_eval(loop_structure, phi).rows == frozenset({("1",)})
        assert bounded_var_eval(path_structure, phi).rows == frozenset()

    def test_negation_complements(self, path_structure):
        """Negation complements within the universe."""
        table = bounded_var_eval(path_structure, parse_formula("!P(x)"))
        assert table.rows == frozenset({("2",), ("3",)})

    def test_disjunction_pads(self, path_structure):
        """Both sides of | are padded to the common schema."""
        table = bounded_var_eval(path_structure, parse_formula("P(x) | E(x,y)"))
        assert table.schema == (x, y)
        assert len(table) == 4

    def test_sentence_is_boolean_table(self, path_structure):
        """Sentences give a 0-ary table."""
        table = bounded_var_eval(path_structure, parse_formula("exists x y. E(x,y)"))
        assert table.schema == ()
        assert table.is_true

    def test_full_product_of_nothing(self, path_structure):
        """The empty schema has exactly the empty row."""
        assert full_product_table(path_structure, ()).rows == frozenset({()})

    def test_empty_universe(self):
        """exists is false and forall is true over an empty universe."""
        sig = Signature.one_sorted({"P": 1})
        empty = Structure.build(sig, {"U": []})
        assert not bounded_var_eval(empty, parse_formula("exists x. P(x)", sig)).is_true
        assert bounded_var_eval(empty, parse_formula("forall x. P(x)", sig)).is_true

    def test_vacuous_quantifier_over_empty_sort(self):
        """A block over an empty sort decides the result even when vacuous."""
        sig = Signature(sorts=frozenset({"U", "s"}), relations={"P": ("U",)})
        structure = Structure.build(sig, {"U": ["1"], "s": []}, {"P": [("1",)]})
        phi = parse_formula("forall y. exists x:s. P(y)", sig)
        assert naive_eval(structure, phi) is False
        assert bounded_var_eval(structure, phi).is_true is False

    def test_unknown_symbol(self, path_structure):
        """Symbols outside the structure's signature are refused."""
        with pytest.raises(SignatureError):
            bounded_var_eval(path_structure, parse_formula("exists x. R(x)"))

    @given(sentences, st.data())
    @settings(max_examples=80, deadline=None)
    def test_agrees_with_naive(self, phi, data):
        """Bottom-up evaluation matches brute force."""
        structure = data.draw(structures())
        assert bounded_var_eval(structure, phi).is_true == naive_eval(structure, phi)


class TestFptModelCheck:
    """Test suite for fpt_model_check."""

    def test_requires_sentence(self, path_structure):
        """Open formulas are refused."""
        with pytest.raises(PreconditionError):
            fpt_model_check(path_structure, parse_formula("P(x)"))

    def test_loop_example(self, loop_structure, edge_signature):
        """exists x E(x,x) holds on a self-loop."""
        phi = parse_formula("exists x. E(x,x)", edge_signature)
        result, report = fpt_model_check(loop_structure, phi)
        assert result is True
        assert report.thickness == 1

    def test_table_bound(self):
        """Intermediate tables stay below |B|^thickness."""
        phi = f_family(2)
        sig = Signature.one_sorted({"E1": 2, "E2": 2})
        universe = ["a", "b", "c"]
        rows = [(u, v) for u in universe for v in universe if u != v]
        structure = Structure.build(sig, {"U": universe}, {"E1": rows, "E2": rows})
        result, report = fpt_model_check(structure, phi)
        assert result == naive_eval(structure, phi)
        assert report.max_table_rows <= structure.measure ** report.thickness

    def test_empty_sort_falls_back(self):
        """With an empty sort in use the input sentence is evaluated as is."""
        sig = Signature(sorts=frozenset({"U", "s"}), relations={"P": ("U",)})
        structure = Structure.build(sig, {"U": ["1"], "s": []}, {"P": [("1",)]})
        phi = parse_formula("forall y. exists x:s. P(y)", sig)
        result, _ = fpt_model_check(structure, phi)
        assert result is False

    @given(sentences, st.data())
    @settings(max_examples=60, deadline=None)
    def test_agrees_with_naive(self, phi, data):
        """The thickness pipeline matches brute force."""
        structure = data.draw(structures())
        result, report = fpt_model_check(structure, phi)
        assert result == naive_eval(structure, phi)
        assert report.max_table_rows <= max(1, structure.measure ** report.thickness)


class TestRunEngine:
    """Test suite for run_engine."""

    @pytest.mark.parametrize("engine", list(EngineEnum))
    def test_engines_agree(self, engine, path_structure, edge_signature):
        """Every engine reports the same truth value."""
        phi = parse_formula("exists x. (P(x) & exists y. E(x,y))", edge_signature)
        stats = run_engine(engine, path_structure, phi)
        assert stats.result is True
        assert stats.engine == engine.value
        assert stats.wall_ms >= 0

    def test_stats_fields(self, path_structure, edge_signature):
        """fpt reports thickness; naive counts formula nodes."""
        phi = parse_formula("forall x. exists y. E(x,y)", edge_signature)
        naive = run_engine(EngineEnum.NAIVE, path_structure, phi)
        fpt = run_engine(EngineEnum.FPT, path_structure, phi)
        assert naive.result is False and fpt.result is False
        assert naive.node_count == node_count(phi)
        assert naive.thickness is None
        assert fpt.thickness == 2

    def test_requires_sentence(self, path_structure):
        """Every engine needs a sentence."""
        with pytest.raises(PreconditionError):
            run_engine(EngineEnum.NAIVE, path_structure, parse_formula("P(x)"))


def _timed(function, *args):
    started = time.perf_counter()
    value = function(*args)
    return value, time.perf_counter() - started


def _dead_end_layers() -> Structure:
    """
    30 vertices: six sources, then layers of 6, 6, 6 and 5 vertices joined
    completely from each layer to the next, then a looping vertex g that every
    source also points to. Walks through the layers stop after four steps, so
    a depth-6 chain from a source only succeeds through g, listed last.
    """
    layers = [
        [f"s{i}" for i in range(6)],
        [f"a{i}" for i in range(6)],
        [f"b{i}" for i in range(6)],
        [f"c{i}" for i in range(6)],
        [f"d{i}" for i in range(5)],
    ]
    edges = [(u, v) for upper, lower in zip(layers, layers[1:]) for u in upper for v in lower]
    edges += [(s, "g") for s in layers[0]] + [("g", "g")]
    universe = [v for layer in layers for v in layer] + ["g"]
    return Structure.build(Signature.one_sorted({"E": 2}), {"U": universe}, {"E": edges})


class TestScaling:
    """Timing of the depth-6 chain, which the rewriting brings down to two variables."""

    def test_fpt_on_two_hundred_elements(self):
        """fpt decides the chain on a random 200-vertex digraph in under 2 seconds."""
        rng = random.Random(20240611)
        structure = random_structure(
            rng, Signature.one_sorted({"E": 2}), max_size=200, min_size=200, density=0.02
        )
        phi = chain_sentence(6)

        (result, report), seconds = _timed(fpt_model_check, structure, phi)

        assert structure.measure == 200
        assert seconds < 2.0
        assert report.thickness == 2
        assert result == bounded_var_eval(structure, phi).is_true

    def test_naive_is_sixty_times_slower(self):
        """On 30 vertices brute force takes at least 60 times as long as fpt."""
        structure = _dead_end_layers()
        phi = chain_sentence(6)
        fpt_model_check(structure, phi)
        fpt_seconds = min(_timed(fpt_model_check, structure, phi)[1] for _ in range(3))

        expected, naive_seconds = _timed(naive_eval, structure, phi)

        assert structure.measure == 30
        assert expected is False
        assert fpt_model_check(structure, phi)[0] is False
        assert naive_seconds >= 60 * fpt_seconds
