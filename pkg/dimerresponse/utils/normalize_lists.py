from __future__ import annotations

import json
import re
from collections.abc import Iterable, Iterator
from typing import Any

from dimerresponse.utils.normalize_value import strip_wrapping_quotes

# "sigma_abs : coll" -> "sigma_abs:coll"
_PART_SEPARATOR = re.compile(r"\s*:\s*")
_LIST_SEPARATOR = re.compile(r"[,;]")


def _json_list(text: str) -> list[Any] | None:
    if not (text.startswith("[") and text.endswith("]")):
        return None
    try:
        loaded = json.loads(text)
    except json.JSONDecodeError:
        return None
    return loaded if isinstance(loaded, list) else None


def _selector_tokens(value: Any) -> Iterator[str]:
    if isinstance(value, Iterable) and not isinstance(value, str | bytes | bytearray):
        for item in value:
            yield from _selector_tokens(item)
        return

    text = strip_wrapping_quotes(str(value))
    nested = _json_list(text)
    if nested is not None:
        yield from _selector_tokens(nested)
        return

    for part in _LIST_SEPARATOR.split(text):
        token = _PART_SEPARATOR.sub(":", strip_wrapping_quotes(part))
        if token:
            yield token


def normalize_str_list(value: Any, *, lowercase: bool = False) -> list[str]:
    """
    Flatten output selectors (``sigma_abs:coll``) or validation check filters
    (``oracle_W2``) into an ordered, de-duplicated list.

    Examples:
      None                                 -> []
      "sigma_ext"                          -> ["sigma_ext"]
      "sigma_sc, `ret_rate`; gamma0_rate"  -> ["sigma_sc", "ret_rate", "gamma0_rate"]
      '["sigma_sc", "sigma_ext:total"]'    -> ["sigma_sc", "sigma_ext:total"]
      ["oracle_W2", "oracle_W2", "decoupling"] -> ["oracle_W2", "decoupling"]
      "sigma_abs : coll"                   -> ["sigma_abs:coll"]

    Quotes and backticks around the whole value or a single selector are dropped.
    `lowercase` folds case before de-duplication (outputs are case-insensitive,
    check filters are not).
    """
    if value is None:
        return []

    selectors: list[str] = []
    for token in _selector_tokens(value):
        token = token.lower() if lowercase else token
        if token not in selectors:
            selectors.append(token)
    return selectors
