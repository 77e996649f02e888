"""
Unit tests for parsing and printing formulas.
"""

import pytest
from hypothesis import given, settings

from folio.core.exceptions import FormulaSyntaxError, SignatureError
from folio.models.formula import And, Atom, Not, Or, Quant, Quantifier, Variable
from folio.models.signature import Signature
from folio.services.syntax_service import (
    parse_formula,
    print_formula,
    signature_of,
)
from tests.strategies import formulas

x, y, x2 = Variable("x"), Variable("y"), Variable("x2")


class TestParseFormula:
    """Test suite for parse_formula."""

    def test_nested_blocks(self):
        """Each quantifier keyword opens its own block."""
        phi = parse_formula("forall y. exists x. exists x2. (E(y,x) & E(x,x2))")
        expected = Quant(
            Quantifier.FORALL,
            (y,),
            Quant(
                Quantifier.EXISTS,
                (x,),
                Quant(Quantifier.EXISTS, (x2,), And(Atom("E", (y, x)), Atom("E", (x, x2)))),
            ),
        )
        assert phi == expected

    def test_negated_quantifier(self):
        """Negation binds tighter than anything but parentheses."""
        phi = parse_formula("!(exists x. R(x))")
        assert phi == Not(Quant(Quantifier.EXISTS, (x,), Atom("R", (x,))))

    def test_block_with_several_variables(self):
        """exists x y. binds both variables in one block."""
        phi = parse_formula("exists x y. E(x,y)")
        assert isinstance(phi, Quant)
        assert phi.variables == (x, y)

    def test_precedence(self):
        """& binds tighter than |."""
        phi = parse_formula("P(x) | Q(x) & R(x)")
        assert phi == Or(Atom("P", (x,)), And(Atom("Q", (x,)), Atom("R", (x,))))

    def test_quantifier_scope_extends_right(self):
        """A quantifier body runs to the end of the enclosing group."""
        phi = parse_formula("exists x. P(x) & Q(x)")
        assert phi == Quant(Quantifier.EXISTS, (x,), And(Atom("P", (x,)), Atom("Q", (x,))))
        grouped = parse_formula("(exists x. P(x)) & Q(x)")
        assert isinstance(grouped, And)
        assert grouped.free == frozenset({x})

    def test_sort_annotation(self):
        """Sort annotations on a binder reach its occurrences."""
        phi = parse_formula("exists x:s. P(x)")
        assert phi.variables == (Variable("x", "s"),)
        assert phi.body == Atom("P", (Variable("x", "s"),))

    def test_sorts_from_signature(self):
        """Arity sorts decide the sorts of unannotated variables."""
        sig = Signature(sorts=frozenset({"a", "b"}), relations={"R": ("a", "b")})
        phi = parse_formula("exists x y. R(x,y)", sig)
        assert phi.variables == (Variable("x", "a"), Variable("y", "b"))

    def test_sort_conflict(self):
        """A variable filling positions of two sorts is a mismatch."""
        sig = Signature(sorts=frozenset({"a", "b"}), relations={"R": ("a", "b")})
        with pytest.raises(SignatureError):
            parse_formula("exists x. R(x,x)", sig)

    def test_arity_mismatch(self):
        """E(x) with E binary is rejected."""
        with pytest.raises(SignatureError):
            parse_formula("E(x)", Signature.one_sorted({"E": 2}))

    def test_unknown_symbol(self):
        """Symbols outside the signature are rejected."""
        with pytest.raises(SignatureError):
            parse_formula("F(x)", Signature.one_sorted({"E": 2}))

    def test_inconsistent_inferred_arity(self):
        """Without a signature one symbol keeps one arity."""
        with pytest.raises(SignatureError):
            parse_formula("E(x) & E(x,y)")

    def test_syntax_error_reports_position(self):
        """Unexpected characters carry line and column."""
        with pytest.raises(FormulaSyntaxError) as exc_info:
            parse_formula("P(x) & # Q(x)")
        assert exc_info.value.line == 1
        assert exc_info.value.column == 8

    def test_unexpected_end(self):
        """Truncated input is a syntax error."""
        with pytest.raises(FormulaSyntaxError):
            parse_formula("exists x. ")

    def test_duplicate_binder(self):
        """A block may not list a name twice."""
        with pytest.raises(FormulaSyntaxError):
            parse_formula("exists x x. P(x)")

    def test_keyword_prefix_is_a_name(self):
        """Names that merely start with a keyword are ordinary names."""
        phi = parse_formula("existsx(y)")
        assert phi == Atom("existsx", (y,))


class TestPrintFormula:
    """Test suite for print_formula."""

    def test_quantified_junction_is_parenthesized(self):
        """Block bodies that are junctions get parentheses."""
        phi = parse_formula("forall y. exists x. (E(y,x) & exists y. E(x,y))")
        assert print_formula(phi) == "forall y. exists x. (E(y,x) & exists y. E(x,y))"

    def test_open_scope_on_the_left(self):
        """A quantifier on the left of a connective is wrapped."""
        phi = And(Quant(Quantifier.EXISTS, (x,), Atom("P", (x,))), Atom("Q", (y,)))
        assert print_formula(phi) == "(exists x. P(x)) & Q(y)"

    def test_sorts_are_annotated(self):
        """Non-default sorts are written back."""
        phi = parse_formula("exists x:s. P(x)")
        assert print_formula(phi) == "exists x:s. P(x:s)"

    @given(formulas)
    @settings(max_examples=100, deadline=None)
    def test_print_then_parse(self, phi):
        """Printing and parsing again gives the same formula."""
        assert parse_formula(print_formula(phi)) == phi


class TestSignatureOf:
    """Test suite for signature_of."""

    def test_reads_atoms_and_binders(self):
        """Symbols and sorts are read off the formula."""
        phi = parse_formula("exists x:s y. (R(x,y) & P(y))")
        sig = signature_of(phi)
        assert sig.arity("R") == ("s", "U")
        assert sig.arity("P") == ("U",)
        assert sig.sorts == frozenset({"s", "U"})
