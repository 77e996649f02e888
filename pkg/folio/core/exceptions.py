"""
Custom exception classes with categorization and process exit codes.
"""

from typing import Any, Dict, Optional

# Exit codes shared by every command.
EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2
EXIT_LIMIT = 3
EXIT_VIOLATION = 4


class FolioError(Exception):
    """Base exception class for all folio exceptions."""

    def __init__(
        self,
        detail: str,
        exit_code: int = EXIT_ERROR,
        category: str = "internal",
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(detail)
        self.detail = detail
        self.exit_code = exit_code
        self.category = category
        self.context = context or {}


class FormulaSyntaxError(FolioError):
    """Formula text does not match the grammar."""

    def __init__(
        self,
        detail: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        context: Optional[Dict[str, Any]] = None,
    ):
        if line is not None:
            detail = f"{detail} (line {line}, column {column})"
        super().__init__(
            detail=detail,
            category="syntax",
            context={**(context or {}), "line": line, "column": column},
        )
        self.line = line
        self.column = column


class SignatureError(FolioError):
    """Unknown relation symbol, arity mismatch or sort mismatch."""

    def __init__(self, detail: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(detail=detail, category="signature", context=context)


class StructureError(FolioError):
    """Structure is malformed or does not match a signature."""

    def __init__(self, detail: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(detail=detail, category="structure", context=context)


class EvaluationError(FolioError):
    """Assignment does not cover the free variables or maps outside a universe."""

    def __init__(self, detail: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(detail=detail, category="evaluation", context=context)


class PreconditionError(FolioError):
    """An operation was called on input outside its domain."""

    def __init__(self, detail: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(detail=detail, category="precondition", context=context)


class LimitExceededError(FolioError):
    """Input exceeds a configured size limit."""

    def __init__(self, detail: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(
            detail=detail, exit_code=EXIT_LIMIT, category="limit", context=context
        )


class GadgetError(FolioError):
    """Reduction inputs do not fit any supported construction."""

    def __init__(self, detail: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(detail=detail, category="gadget", context=context)


class InvariantViolation(FolioError):
    """A bound that must hold for every output was found violated at runtime."""

    def __init__(self, detail: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(
            detail=detail,
            exit_code=EXIT_VIOLATION,
            category="invariant",
            context=context,
        )
