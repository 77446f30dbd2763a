"""
Console formatting helpers for the CLI.

Status lines are coloured when colorama is installed and plain otherwise;
``format_witness`` output is never coloured so it can be parsed.
"""

import json
from typing import Any, Dict, Optional

try:
    from colorama import Fore, Style, init
    init(autoreset=True)
    COLORAMA_AVAILABLE = True
except ImportError:
    COLORAMA_AVAILABLE = False


def _paint(colour: str, text: str) -> str:
    if not COLORAMA_AVAILABLE:
        return text
    return f"{getattr(Fore, colour)}{text}{Style.RESET_ALL}"


def format_error(message: str, suggestion: Optional[str] = None) -> str:
    """Format an error message with an optional suggestion line.

    Args:
        message: Error message
        suggestion: Optional hint for fixing the error

    Returns:
        Formatted error string
    """
    out = _paint('RED', f"Error: {message}")
    if suggestion:
        out += "\n" + _paint('CYAN', f"Suggestion: {suggestion}")
    return out


def format_warning(message: str, action: Optional[str] = None) -> str:
    out = _paint('YELLOW', f"Warning: {message}")
    if action:
        out += "\n" + _paint('CYAN', f"-> {action}")
    return out


def format_success(message: str) -> str:
    return _paint('GREEN', f"✓ {message}")


def format_failure(message: str) -> str:
    return _paint('RED', f"✗ {message}")


def format_witness(kind: str, payload: Dict[str, Any]) -> str:
    """Machine-readable witness line: ``WITNESS <kind> key=value ...``.

    Values are JSON-encoded so lists and strings stay unambiguous; keys keep
    their insertion order.
    """
    fields = " ".join(f"{k}={json.dumps(v, separators=(',', ':'))}" for k, v in payload.items())
    return f"WITNESS {kind} {fields}".rstrip()
