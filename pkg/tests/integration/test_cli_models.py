"""
Integration tests for the model-checking commands: eval, gadget and selftest.
"""

import json

import pytest

from folio.core.exceptions import EXIT_ERROR, EXIT_FALSE, EXIT_TRUE, EXIT_VIOLATION

ENGINES = ["naive", "bounded", "fpt"]


class TestEvalCommand:
    """Integration tests for folio eval."""

    @pytest.mark.parametrize("engine", ENGINES)
    def test_loop_is_true(self, invoke, write_query, write_db, engine):
        """Test a self-loop satisfies exists x. E(x,x) on every engine."""
        db = write_db(["1"], {"E": (2, [("1", "1")])})
        result = invoke(
            "eval", "--engine", engine, "--db", db, "--query", write_query("exists x. E(x,x)")
        )

        assert result.exit_code == EXIT_TRUE
        assert result.output.strip() == "true"

    @pytest.mark.parametrize("engine", ENGINES)
    def test_empty_relation_is_false(self, invoke, write_query, write_db, engine):
        """Test an empty relation exits with the false code."""
        db = write_db(["1"], {"E": (2, [])})
        result = invoke(
            "eval", "--engine", engine, "--db", db, "--query", write_query("exists x. E(x,x)")
        )

        assert result.exit_code == EXIT_FALSE
        assert result.output.strip() == "false"

    def test_stats(self, invoke, write_query, write_db):
        """Test --stats emits the evaluation statistics."""
        db = write_db(["1", "2", "3"], {"E": (2, [("1", "2"), ("2", "3")])})
        query = write_query("forall x. exists y. (E(x,y) | E(y,x))")
        result = invoke("eval", "--db", db, "--query", query, "--stats")

        assert result.exit_code == EXIT_TRUE
        stats = json.loads(result.output)
        assert stats["engine"] == "fpt"
        assert stats["result"] is True
        assert stats["thickness"] == 2
        assert stats["max_table_rows"] >= 1

    def test_verify(self, invoke, write_query, write_db):
        """Test --verify agrees with the naive engine."""
        db = write_db(["1", "2"], {"E": (2, [("1", "2")])})
        query = write_query("forall x. exists y. E(x,y)")
        result = invoke("eval", "--engine", "bounded", "--db", db, "--query", query, "--verify")

        assert result.exit_code == EXIT_FALSE
        assert result.output.strip() == "false"

    def test_csv_directory(self, invoke, write_query, tmp_path):
        """Test structures can be read from a directory of relation files."""
        db = tmp_path / "db"
        db.mkdir()
        (db / "E.csv").write_text("U,U\n1,2\n2,1\n")
        result = invoke(
            "eval", "--db", db, "--query", write_query("forall x. exists y. E(x,y)")
        )

        assert result.exit_code == EXIT_TRUE

    def test_free_variables_rejected(self, invoke, write_query, write_db):
        """Test only sentences can be evaluated."""
        db = write_db(["1"], {"E": (2, [("1", "1")])})
        result = invoke("eval", "--db", db, "--query", write_query("E(x,x)"))

        assert result.exit_code == EXIT_ERROR
        assert "error:" in result.stderr

    def test_unknown_symbol(self, invoke, write_query, write_db):
        """Test atoms must use relations of the structure."""
        db = write_db(["1"], {"E": (2, [])})
        result = invoke("eval", "--db", db, "--query", write_query("exists x. P(x)"))

        assert result.exit_code == EXIT_ERROR

    def test_invalid_document(self, invoke, write_query, tmp_path):
        """Test malformed structure documents name the failing location."""
        db = tmp_path / "db.json"
        db.write_text(json.dumps({"universes": {"U": ["1"]}, "relations": {"E": {}}}))
        result = invoke("eval", "--db", db, "--query", write_query("exists x. E(x,x)"))

        assert result.exit_code == EXIT_ERROR
        assert "invalid document at relations.E" in result.stderr


class TestGadgetCommand:
    """Integration tests for folio gadget."""

    def test_clique_on_triangle(self, invoke, triangle_query, write_graph, tmp_path):
        """Test the clique gadget of a triangle satisfies the 3-clique sentence."""
        graph = write_graph([("a", "b"), ("b", "c"), ("c", "a")])
        output = tmp_path / "gadget.json"
        built = invoke(
            "gadget", "clique", "--k", 3, "--query", triangle_query, "--graph", graph, "-o", output
        )
        assert built.exit_code == EXIT_TRUE

        document = json.loads(output.read_text())
        assert document["universes"]["U"] == ["a", "b", "c"]
        result = invoke("eval", "--db", output, "--query", triangle_query)
        assert result.exit_code == EXIT_TRUE

    def test_clique_on_path(self, invoke, triangle_query, write_graph, tmp_path):
        """Test a triangle-free graph gives a structure falsifying the sentence."""
        graph = write_graph([("a", "b"), ("b", "c")])
        output = tmp_path / "gadget.json"
        invoke(
            "gadget", "clique", "--k", 3, "--query", triangle_query, "--graph", graph, "-o", output
        )

        result = invoke("eval", "--engine", "naive", "--db", output, "--query", triangle_query)
        assert result.exit_code == EXIT_FALSE

    def test_clique_to_stdout(self, invoke, triangle_query, write_graph):
        """Test the structure document is printed without --output."""
        graph = write_graph([("a", "b")])
        result = invoke("gadget", "clique", "--k", 3, "--query", triangle_query, "--graph", graph)

        assert result.exit_code == EXIT_TRUE
        assert set(json.loads(result.output)["relations"]) == {"F12", "F13", "F23"}

    def test_clique_missing(self, invoke, triangle_query, write_graph):
        """Test sentences without a universal clique are refused with --universal."""
        graph = write_graph([("a", "b")])
        result = invoke(
            "gadget", "clique", "--k", 3, "--query", triangle_query, "--graph", graph, "--universal"
        )

        assert result.exit_code == EXIT_ERROR
        assert "universal 3-clique" in result.stderr

    def test_source_lists_simple_subformulas(self, invoke, write_query):
        """Test source enumerates the simple subformulas with their paths."""
        phi = write_query("forall z. exists x y. (E(x,z) & F(x,y))")
        result = invoke("gadget", "source", "--phi", phi)

        assert result.exit_code == EXIT_TRUE
        lines = result.output.strip().splitlines()
        assert lines
        assert all(line.split(" ", 1)[0].isdigit() for line in lines)

    def test_source_index_out_of_range(self, invoke, write_query):
        """Test an index past the simple subformulas is a usage error."""
        phi = write_query("forall z. exists x y. (E(x,z) & F(x,y))")
        result = invoke("gadget", "source", "--phi", phi, "--case", "based", "--index", 99)

        assert result.exit_code == EXIT_ERROR
        assert "--index" in result.stderr


class TestSelftestCommand:
    """Integration tests for folio selftest."""

    def test_passes(self, invoke):
        """Test a short run passes every suite."""
        result = invoke("selftest", "--cases", 2)

        assert result.exit_code == EXIT_TRUE
        assert result.output.startswith("seed: ")
        assert "FAILED" not in result.output

    def test_json_report(self, invoke):
        """Test --json emits the report with the requested seed."""
        result = invoke("selftest", "--cases", 1, "--seed", 11, "--json")

        assert result.exit_code == EXIT_TRUE
        report = json.loads(result.output)
        assert report["seed"] == 11
        assert len(report["suites"]) == 9
        assert report["passed"] is True

    def test_mutant_fails(self, invoke):
        """Test the injected mutant is reported with a counterexample."""
        result = invoke("selftest", "--cases", 1, "--inject-mutant")

        assert result.exit_code == EXIT_VIOLATION
        assert "equivalence: 1 cases, 1 failures, FAILED" in result.output
        assert "minimize preserves truth" in result.output
        assert "structure: " in result.output

    def test_zero_cases_warns(self, invoke):
        """Test zero cases pass vacuously with a warning."""
        result = invoke("selftest", "--cases", 0)

        assert result.exit_code == EXIT_TRUE
        assert "zero cases" in result.stderr

    def test_suite_selection(self, invoke):
        """Test --suite runs only the named suites and prints outcome counts."""
        result = invoke("selftest", "--cases", 3, "--suite", "clique", "--suite", "accordion")

        assert result.exit_code == EXIT_TRUE
        lines = result.output.splitlines()
        assert lines[1].startswith("accordion: 3 cases, 0 failures, ok")
        assert lines[2] == "  outcomes: based=1, disjunction=1, conjunction=1"
        assert lines[3].startswith("clique: 3 cases")

    def test_unknown_suite(self, invoke):
        """Test unknown suite names are a usage error."""
        result = invoke("selftest", "--suite", "nonsense")

        assert result.exit_code == EXIT_ERROR
