"""
Pytest configuration for unit tests.
"""

import random

import pytest

from folio.core.config import settings
from folio.models.signature import Signature
from folio.models.structure import Structure
from folio.services.syntax_service import parse_formula


@pytest.fixture
def parse():
    """Parse formula text without a signature."""
    return parse_formula


@pytest.fixture
def rng():
    """Random generator seeded with the configured seed."""
    return random.Random(settings.seed)


@pytest.fixture
def edge_signature():
    """One-sorted signature with a binary relation E and a unary relation P."""
    return Signature.one_sorted({"E": 2, "P": 1})


@pytest.fixture
def path_structure(edge_signature):
    """Directed path 1 -> 2 -> 3 with P = {1}."""
    return Structure.build(
        edge_signature,
        {"U": ["1", "2", "3"]},
        {"E": [("1", "2"), ("2", "3")], "P": [("1",)]},
    )


@pytest.fixture
def loop_structure(edge_signature):
    """Single element with a self-loop."""
    return Structure.build(edge_signature, {"U": ["1"]}, {"E": [("1", "1")]})
