"""
Unit tests for error handling utilities, custom exceptions and log formatting.
"""

import json
import logging

import click
import pytest
from pydantic import ValidationError

from folio.core.error_handlers import handle_cli_errors
from folio.core.error_utils import (
    MAX_CONTEXT_VALUE_LENGTH,
    categorize_exception,
    clip_dict,
    clip_value,
    extract_error_context,
    get_stack_trace,
)
from folio.core.exceptions import (
    EXIT_ERROR,
    EXIT_LIMIT,
    EXIT_VIOLATION,
    FormulaSyntaxError,
    GadgetError,
    InvariantViolation,
    LimitExceededError,
    SignatureError,
    StructureError,
)
from folio.core.logging import CustomJsonFormatter, CustomTextFormatter
from folio.schemas.structure import StructureDocument


class TestCustomExceptions:
    """Test custom exception classes."""

    def test_syntax_error_position(self):
        """Test FormulaSyntaxError carries its position."""
        exc = FormulaSyntaxError("unexpected '#'", line=1, column=8)

        assert exc.exit_code == EXIT_ERROR
        assert exc.category == "syntax"
        assert exc.detail == "unexpected '#' (line 1, column 8)"
        assert exc.context == {"line": 1, "column": 8}

    def test_signature_error(self):
        """Test SignatureError."""
        exc = SignatureError("arity mismatch", context={"relation": "E"})

        assert exc.exit_code == EXIT_ERROR
        assert exc.category == "signature"
        assert exc.context == {"relation": "E"}

    def test_limit_exceeded(self):
        """Test LimitExceededError exits with the limit code."""
        exc = LimitExceededError("too many nodes")

        assert exc.exit_code == EXIT_LIMIT
        assert exc.category == "limit"
        assert exc.context == {}

    def test_invariant_violation(self):
        """Test InvariantViolation exits with the violation code."""
        exc = InvariantViolation("bound exceeded")

        assert exc.exit_code == EXIT_VIOLATION
        assert exc.category == "invariant"

    def test_gadget_error(self):
        """Test GadgetError."""
        exc = GadgetError("no case applies")

        assert exc.exit_code == EXIT_ERROR
        assert exc.category == "gadget"


class TestContextClipping:
    """Test clipping of log context values."""

    def test_short_values_unchanged(self):
        """Numbers and short strings pass through."""
        assert clip_value(3) == 3
        assert clip_value(None) is None
        assert clip_value("E(x,y)") == "E(x,y)"

    def test_long_values_clipped(self):
        """Long formula texts are truncated."""
        clipped = clip_value("P(x) & " * 100)
        assert len(clipped) == MAX_CONTEXT_VALUE_LENGTH
        assert clipped.endswith("...")

    def test_nested_dict(self):
        """Nested dictionaries are clipped recursively."""
        data = {"outer": {"formula": "x" * 500}, "count": 2}
        clipped = clip_dict(data)
        assert clipped["count"] == 2
        assert len(clipped["outer"]["formula"]) == MAX_CONTEXT_VALUE_LENGTH


class TestErrorCategorization:
    """Test exception categorization."""

    def test_categorize_custom_exceptions(self):
        """Test categorizing folio exceptions."""
        assert categorize_exception(StructureError("bad")) == "structure"
        assert categorize_exception(LimitExceededError("big")) == "limit"
        assert categorize_exception(InvariantViolation("broken")) == "invariant"

    def test_categorize_standard_exceptions(self):
        """Test categorizing standard Python exceptions."""
        assert categorize_exception(FileNotFoundError("missing")) == "io"
        assert categorize_exception(ValueError("bad value")) == "validation"
        assert categorize_exception(RecursionError("deep")) == "limit"
        assert categorize_exception(KeyError("k")) == "internal"

    def test_extract_error_context(self):
        """Context of folio exceptions is included."""
        context = extract_error_context(GadgetError("no case", context={"path": [0]}))
        assert context["exception_type"] == "GadgetError"
        assert context["exception_message"] == "no case"
        assert context["additional_context"] == {"path": "[0]"}

    def test_stack_trace(self):
        """Stack traces name the exception."""
        try:
            raise StructureError("broken")
        except StructureError as exc:
            trace = get_stack_trace(exc)
        assert "StructureError: broken" in trace


class TestHandleCliErrors:
    """Test the command decorator that maps exceptions to exit codes."""

    @staticmethod
    def _run(exc):
        @handle_cli_errors
        def command():
            raise exc

        with pytest.raises(click.exceptions.Exit) as exc_info:
            command()
        return exc_info.value.exit_code

    def test_folio_errors(self):
        """Folio exceptions exit with their own code."""
        assert self._run(SignatureError("unknown symbol")) == EXIT_ERROR
        assert self._run(LimitExceededError("too big")) == EXIT_LIMIT
        assert self._run(InvariantViolation("bound")) == EXIT_VIOLATION

    def test_validation_error(self, capsys):
        """Invalid documents exit with the error code and name the location."""
        with pytest.raises(ValidationError) as exc_info:
            StructureDocument.model_validate({"universes": {"U": [True]}})
        assert self._run(exc_info.value) == EXIT_ERROR
        assert "invalid document at universes" in capsys.readouterr().err

    def test_recursion_is_a_limit(self):
        """Very deep inputs exit with the limit code."""
        assert self._run(RecursionError("maximum recursion depth exceeded")) == EXIT_LIMIT

    def test_unexpected_error(self, capsys):
        """Anything else is an internal error."""
        assert self._run(KeyError("k")) == EXIT_ERROR
        assert "internal error" in capsys.readouterr().err

    def test_exit_passes_through(self):
        """click's own exits are not translated."""
        assert self._run(click.exceptions.Exit(1)) == 1


class TestLogFormatters:
    """Test the text and JSON log formatters."""

    @staticmethod
    def _record(**extra):
        record = logging.LogRecord(
            "folio.test", logging.INFO, __file__, 10, "Loaded query", None, None
        )
        for key, value in extra.items():
            setattr(record, key, value)
        return record

    def test_text_formatter_appends_extra(self):
        """Extra fields are appended as key=value pairs."""
        formatter = CustomTextFormatter("%(levelname)s %(name)s %(message)s")
        text = formatter.format(self._record(nodes=5))
        assert text.startswith("INFO folio.test Loaded query")
        assert text.endswith("| nodes=5")

    def test_json_formatter_fields(self):
        """JSON records carry level, logger and extra fields."""
        formatter = CustomJsonFormatter("%(timestamp)s %(level)s %(name)s %(message)s")
        payload = json.loads(formatter.format(self._record(nodes=5)))
        assert payload["level"] == "INFO"
        assert payload["logger"] == "folio.test"
        assert payload["message"] == "Loaded query"
        assert payload["nodes"] == 5
