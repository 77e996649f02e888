"""
Pytest configuration and fixtures for the command-line tests.
"""

import json

import pytest
from click.testing import CliRunner

from folio.cli import cli


@pytest.fixture
def runner():
    """CLI runner keeping stdout and stderr apart."""
    return CliRunner(mix_stderr=False)


@pytest.fixture
def invoke(runner):
    """Invoke the folio group with string arguments."""

    def _invoke(*args):
        return runner.invoke(cli, [str(arg) for arg in args])

    return _invoke


@pytest.fixture
def write_query(tmp_path):
    """Write formula text to a file and return its path."""
    counter = iter(range(1000))

    def _write(text: str):
        path = tmp_path / f"query_{next(counter)}.fo"
        path.write_text(text + "\n")
        return path

    return _write


@pytest.fixture
def write_db(tmp_path):
    """Write a one-sorted structure document and return its path."""
    counter = iter(range(1000))

    def _write(universe, relations):
        document = {
            "sorts": ["U"],
            "universes": {"U": list(universe)},
            "relations": {
                symbol: {"arity": ["U"] * arity, "tuples": [list(t) for t in tuples]}
                for symbol, (arity, tuples) in relations.items()
            },
        }
        path = tmp_path / f"db_{next(counter)}.json"
        path.write_text(json.dumps(document))
        return path

    return _write


@pytest.fixture
def write_graph(tmp_path):
    """Write an edge list and return its path."""

    def _write(edges, name="graph.txt"):
        path = tmp_path / name
        path.write_text("".join(f"{u} {v}\n" for u, v in edges))
        return path

    return _write


@pytest.fixture
def triangle_query(write_query):
    """Existential 3-clique sentence over symbol-loose atoms."""
    return write_query("exists x1 x2 x3. (F12(x1,x2) & F13(x1,x3) & F23(x2,x3))")
