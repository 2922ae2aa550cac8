from __future__ import annotations

import math
from typing import Any

# Pairs of opening -> closing quotation marks we should strip
_QUOTE_PAIRS = {
    '"': '"',
    "'": "'",
    "`": "`",
    "“": "”",
    "‘": "’",
}


def strip_wrapping_quotes(s: str) -> str:
    """Remove one or more layers of surrounding quotes/ticks and whitespace."""
    s = s.strip()
    while len(s) >= 2 and _QUOTE_PAIRS.get(s[0]) == s[-1]:
        s = s[1:-1].strip()
    return s


def normalize_int(value: Any, default: int) -> int | None:
    """
    Minimal positive-integer normalizer:
      - Accepts int or str (e.g. "10", "`10`")
      - Returns `default` when value is None
      - Returns None on invalid, zero or negative input
    """
    if value is None:
        return default

    if isinstance(value, bool):
        return None

    if isinstance(value, int):
        return value if value > 0 else None

    if isinstance(value, str):
        try:
            i = int(strip_wrapping_quotes(value), 10)
        except ValueError:
            return None
        return i if i > 0 else None

    return None


def normalize_float(value: Any, default: float | None = None) -> float | None:
    """
    Finite-float normalizer for config values:
      - Accepts int, float or str ("0.2", "`1.2`", "'1e-3'")
      - Returns `default` when value is None
      - Returns None on invalid or non-finite input
    """
    if value is None:
        return default

    if isinstance(value, bool):
        return None

    if isinstance(value, int | float):
        f = float(value)
    elif isinstance(value, str):
        try:
            f = float(strip_wrapping_quotes(value))
        except ValueError:
            return None
    else:
        return None

    return f if math.isfinite(f) else None
