"""JSON helpers that keep decimal quantities exact."""
import json
from decimal import Decimal
from enum import Enum
from typing import Any, Iterable, Optional

import jsonschema

from core.services.error_handling import FormatError


def loads(text: str, source: Optional[str] = None) -> Any:
    """Parse JSON text, reading every non-integer number as a Decimal."""
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as e:
        raise FormatError("$", f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", source)


def format_decimal(value: Decimal) -> str:
    """Shortest fixed-point text for a decimal: 2.50 -> '2.5', 100 -> '100'."""
    text = format(value.normalize(), "f")
    return "0" if text in ("-0", "") else text


def to_plain(value: Any) -> Any:
    """Convert decimals to int/float so the json module can emit them as numbers."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Decimal):
        if value == value.to_integral_value():
            return int(value)
        return float(value)
    if isinstance(value, dict):
        return {k: to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    return value


def dumps(value: Any) -> str:
    """Serialize deterministically: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_plain(value), sort_keys=True, indent=2) + "\n"


def json_path(parts: Iterable[Any]) -> str:
    """Render a jsonschema/pydantic location tuple as ``$.a[0].b``."""
    path = "$"
    for part in parts:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}"
    return path


def check_schema(document: Any, schema: dict, source: Optional[str] = None) -> None:
    """Validate a parsed document against a JSON schema.

    Reports the first error in document order so the location is stable.
    """
    validator = jsonschema.Draft7Validator(schema)
    errors = sorted(
        validator.iter_errors(document),
        key=lambda e: [(0, p, "") if isinstance(p, int) else (1, 0, str(p)) for p in e.absolute_path],
    )
    if errors:
        first = errors[0]
        raise FormatError(json_path(first.absolute_path), first.message, source)
