"""
Utilities for error categorization and error logging.
"""

import traceback
from typing import Any, Dict

from folio.core.exceptions import FolioError

# Formula texts and structures can be large; context values are clipped for logs.
MAX_CONTEXT_VALUE_LENGTH = 200


def clip_value(value: Any) -> Any:
    """
    Shorten long string values so log records stay readable.

    Args:
        value: Value to clip

    Returns:
        The value, or a truncated string representation of it
    """
    if isinstance(value, (int, float, bool)) or value is None:
        return value
    text = str(value)
    if len(text) > MAX_CONTEXT_VALUE_LENGTH:
        return text[: MAX_CONTEXT_VALUE_LENGTH - 3] + "..."
    return text


def clip_dict(data: Dict[str, Any]) -> Dict[str, Any]:
    """
    Recursively clip every value of a dictionary.

    Args:
        data: Dictionary to clip

    Returns:
        New dictionary with clipped values
    """
    clipped = {}
    for key, value in data.items():
        if isinstance(value, dict):
            clipped[key] = clip_dict(value)
        else:
            clipped[key] = clip_value(value)
    return clipped


def extract_error_context(exception: Exception, clip: bool = True) -> Dict[str, Any]:
    """
    Extract context information from an exception.

    Args:
        exception: Exception to extract context from
        clip: Whether to clip long values

    Returns:
        Dictionary of error context
    """
    context: Dict[str, Any] = {
        "exception_type": type(exception).__name__,
        "exception_message": str(exception),
    }

    if getattr(exception, "context", None):
        context["additional_context"] = exception.context

    if clip:
        context = clip_dict(context)

    return context


def get_stack_trace(exception: Exception) -> str:
    """
    Format the stack trace of an exception.

    Args:
        exception: Exception to get stack trace from

    Returns:
        Stack trace string
    """
    return "".join(
        traceback.format_exception(type(exception), exception, exception.__traceback__)
    )


def categorize_exception(exception: Exception) -> str:
    """
    Categorize an exception into one of the standard categories.

    Args:
        exception: Exception to categorize

    Returns:
        Category string such as syntax, signature, structure, limit or internal
    """
    if isinstance(exception, FolioError):
        return exception.category

    if isinstance(exception, (OSError, UnicodeDecodeError)):
        return "io"

    exception_name = type(exception).__name__.lower()
    if any(keyword in exception_name for keyword in ["validation", "value", "json"]):
        return "validation"
    if "recursion" in exception_name:
        return "limit"
    return "internal"
