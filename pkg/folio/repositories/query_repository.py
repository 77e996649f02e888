"""
Query repository for reading formula files.
"""

import logging
from pathlib import Path
from typing import Optional, Union

from folio.core.config import settings
from folio.core.exceptions import LimitExceededError
from folio.models.formula import Formula, node_count
from folio.models.signature import Signature
from folio.services.syntax_service import parse_formula

logger = logging.getLogger(__name__)


class QueryRepository:
    """Repository for formula file access."""

    def __init__(self, max_ast_nodes: Optional[int] = None):
        self.max_ast_nodes = settings.max_ast_nodes if max_ast_nodes is None else max_ast_nodes

    def parse(self, text: str, sig: Optional[Signature] = None) -> Formula:
        """
        Parse formula text and enforce the AST node limit.

        Raises:
            FormulaSyntaxError: text does not match the grammar
            SignatureError: atoms do not fit sig
            LimitExceededError: the formula has more nodes than allowed
        """
        phi = parse_formula(text, sig)
        nodes = node_count(phi)
        if nodes > self.max_ast_nodes:
            raise LimitExceededError(
                f"formula has {nodes} nodes, limit is {self.max_ast_nodes}",
                context={"nodes": nodes, "limit": self.max_ast_nodes},
            )
        return phi

    def load(self, location: Union[str, Path], sig: Optional[Signature] = None) -> Formula:
        """
        Read and parse a formula file.

        Args:
            location: Path of the UTF-8 formula file
            sig: Signature to check against; None infers one

        Returns:
            Formula
        """
        path = Path(location)
        phi = self.parse(path.read_text(encoding="utf-8"), sig)
        logger.info("Loaded query", extra={"path": str(path), "nodes": node_count(phi)})
        return phi
