"""
Unit tests for the structure, query and graph repositories.
"""

import json

import networkx as nx
import pytest
from pydantic import ValidationError

from folio.core.exceptions import LimitExceededError, SignatureError, StructureError
from folio.models.signature import Signature
from folio.repositories import GraphRepository, QueryRepository, StructureRepository
from folio.services.gadget_service import clique_gadget
from folio.services.generator_service import clique_sentence


@pytest.fixture
def repository(tmp_path):
    """StructureRepository rooted at a temporary directory."""
    return StructureRepository(base_dir=tmp_path)


class TestStructureRepository:
    """Test suite for StructureRepository."""

    def test_load_json(self, repository, tmp_path):
        """Numbers are read as strings."""
        (tmp_path / "db.json").write_text(
            json.dumps(
                {
                    "sorts": ["U"],
                    "universes": {"U": [1, 2]},
                    "relations": {"E": {"arity": ["U", "U"], "tuples": [[1, 2]]}},
                }
            )
        )
        structure = repository.load("db.json")
        assert structure.universe("U") == ("1", "2")
        assert structure.relation("E") == frozenset({("1", "2")})

    def test_invalid_json(self, repository, tmp_path):
        """Malformed JSON is a structure error."""
        (tmp_path / "db.json").write_text("{not json")
        with pytest.raises(StructureError):
            repository.load("db.json")

    def test_wrong_tuple_length(self, repository, tmp_path):
        """Tuples must match their arity."""
        (tmp_path / "db.json").write_text(
            json.dumps(
                {
                    "universes": {"U": ["a"]},
                    "relations": {"E": {"arity": ["U", "U"], "tuples": [["a"]]}},
                }
            )
        )
        with pytest.raises(ValidationError):
            repository.load("db.json")

    def test_tuple_outside_universe(self, repository, tmp_path):
        """Elements must belong to their sort."""
        (tmp_path / "db.json").write_text(
            json.dumps(
                {
                    "universes": {"U": ["a"]},
                    "relations": {"P": {"arity": ["U"], "tuples": [["b"]]}},
                }
            )
        )
        with pytest.raises(StructureError):
            repository.load("db.json")

    def test_save_and_load(self, repository, path_structure):
        """A saved structure loads back equal."""
        path = repository.save(path_structure, "out.json")
        assert path.exists()
        assert repository.load(path) == path_structure

    def test_dumps_is_sorted(self, repository, path_structure):
        """Documents list symbols and tuples in sorted order."""
        document = json.loads(repository.dumps(path_structure))
        assert list(document["relations"]) == ["E", "P"]
        assert document["relations"]["E"]["tuples"] == [["1", "2"], ["2", "3"]]

    def test_gadget_output_serializes(self, repository):
        """Gadget structures dump to documents."""
        graph = nx.Graph([("a", "b")])
        structure = clique_gadget(2, clique_sentence(2), graph)
        document = json.loads(repository.dumps(structure))
        assert document["universes"]["U"] == ["a", "b"]

    def test_csv_directory(self, repository, tmp_path):
        """Relation files name their column sorts; universes come from the data."""
        db = tmp_path / "db"
        db.mkdir()
        (db / "E.csv").write_text("U,U\n1,2\n2,3\n")
        (db / "P.csv").write_text("U\n1\n")
        structure = repository.load("db")
        assert set(structure.universe("U")) == {"1", "2", "3"}
        assert structure.relation("P") == frozenset({("1",)})

    def test_csv_universes_file(self, repository, tmp_path):
        """_universes.csv fixes the universes, isolated elements included."""
        db = tmp_path / "db"
        db.mkdir()
        (db / "_universes.csv").write_text("U,1\nU,2\nU,9\n")
        (db / "E.csv").write_text("U,U\n1,2\n")
        structure = repository.load("db")
        assert structure.universe("U") == ("1", "2", "9")

    def test_csv_ragged_row(self, repository, tmp_path):
        """Rows must match the header."""
        db = tmp_path / "db"
        db.mkdir()
        (db / "E.csv").write_text("U,U\n1\n")
        with pytest.raises(StructureError):
            repository.load("db")


class TestQueryRepository:
    """Test suite for QueryRepository."""

    def test_load(self, tmp_path):
        """Formula files are parsed against the signature."""
        (tmp_path / "q.fo").write_text("exists x. E(x,x)\n")
        phi = QueryRepository().load(tmp_path / "q.fo", Signature.one_sorted({"E": 2}))
        assert phi.free == frozenset()

    def test_signature_checked(self, tmp_path):
        """Atoms must fit the structure's signature."""
        (tmp_path / "q.fo").write_text("exists x. E(x)")
        with pytest.raises(SignatureError):
            QueryRepository().load(tmp_path / "q.fo", Signature.one_sorted({"E": 2}))

    def test_node_limit(self):
        """Formulas above the node limit are refused."""
        repository = QueryRepository(max_ast_nodes=3)
        assert repository.parse("P(x) & Q(x)")
        with pytest.raises(LimitExceededError):
            repository.parse("exists x. (P(x) & Q(x))")


class TestGraphRepository:
    """Test suite for GraphRepository."""

    def test_parse(self):
        """Edges, isolated vertices and comments."""
        graph = GraphRepository.parse("# triangle plus one\na b\nb c\nc a\n\nd\n")
        assert graph.number_of_nodes() == 4
        assert graph.number_of_edges() == 3

    def test_too_many_fields(self):
        """Lines carry at most two vertices."""
        with pytest.raises(StructureError):
            GraphRepository.parse("a b c")

    def test_load(self, tmp_path):
        """Edge-list files load into graphs."""
        (tmp_path / "g.txt").write_text("1 2\n")
        graph = GraphRepository().load(tmp_path / "g.txt")
        assert set(graph.nodes) == {"1", "2"}
