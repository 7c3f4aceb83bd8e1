"""
Input validation and parsing utilities for command-line and JSON text.
"""
import re
from fractions import Fraction
from typing import Optional, Tuple

from utils.exceptions import ParseError
from utils.logger import get_logger

logger = get_logger("validators")

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_PARTITION_RE = re.compile(r"^\s*\(\s*((?:\d+\s*,\s*)*\d+)?\s*,?\s*\)\s*$")


def validate_rational_text(text: str) -> Tuple[bool, str]:
    """
    Validate rational number text of the form "p" or "p/q".

    Args:
        text: Input string

    Returns:
        Tuple of (is_valid, error_message)
    """
    match = _RATIONAL_RE.match(text or "")
    if not match:
        return False, f"Not an exact rational: {text!r} (expected p or p/q)"
    if match.group(2) is not None and int(match.group(2)) == 0:
        return False, "Denominator must be nonzero"
    return True, ""


def parse_rational(text: str) -> Fraction:
    """
    Parse "p" or "p/q" into an exact rational.

    Raises:
        ParseError: If the text is not an exact rational (floats are rejected)
    """
    ok, error = validate_rational_text(text)
    if not ok:
        raise ParseError(error)
    match = _RATIONAL_RE.match(text)
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    return Fraction(num, den)


def parse_t(text: str) -> Optional[Fraction]:
    """
    Parse a parameter value: an exact rational, or "generic" (returned as None).
    """
    if text is None or text.strip().lower() == "generic":
        return None
    return parse_rational(text)


def validate_partition_text(text: str) -> Tuple[bool, str]:
    """
    Validate partition text such as "(5,3,3,2)" or "()".

    Returns:
        Tuple of (is_valid, error_message)
    """
    match = _PARTITION_RE.match(text or "")
    if not match:
        return False, f"Not a partition: {text!r} (expected e.g. (3,1,1) or ())"
    parts = [int(p) for p in re.findall(r"\d+", match.group(1) or "")]
    if any(p <= 0 for p in parts):
        return False, "Partition parts must be positive"
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        return False, "Partition parts must be weakly decreasing"
    return True, ""


def parse_partition_parts(text: str) -> Tuple[int, ...]:
    """
    Parse partition text into its tuple of parts.

    Raises:
        ParseError: If the text is not a partition
    """
    ok, error = validate_partition_text(text)
    if not ok:
        raise ParseError(error)
    return tuple(int(p) for p in re.findall(r"\d+", text))


def format_rational(value: Fraction) -> str:
    """Print a rational as "p/q", omitting q when it is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
