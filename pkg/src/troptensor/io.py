"""JSON tensor documents.

A document looks like::

    {"n": 3, "m": 3, "default": "0",
     "entries": [{"idx": [1, 3, 2], "val": "-1"}, ...]}

Indices are 1-based.  Values are strings: integers, decimals, fractions
or ``"inf"``.  Several entries landing in one trailing-index orbit are
combined by ``min``, as is the default for orbit members left unlisted.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .core import INF, Tensor, format_value, parse_value
from .errors import DimensionMismatch, ParseError


def tensor_from_document(doc: dict[str, Any]) -> Tensor:
    try:
        n = int(doc["n"])
        m = int(doc["m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("document needs integer fields 'n' and 'm'") from exc
    if n < 1:
        raise ParseError("n must be at least 1")
    if m < 2:
        raise ParseError("m must be at least 2")
    default = parse_value(doc.get("default", "0"))
    entries = doc.get("entries", [])
    if not isinstance(entries, list):
        raise ParseError("'entries' must be a list")
    items = []
    for k, entry in enumerate(entries):
        try:
            idx = [int(j) - 1 for j in entry["idx"]]
            val = parse_value(entry["val"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"entry {k} needs 'idx' and 'val'") from exc
        items.append((idx, val))
    try:
        return Tensor.from_entries(n, m, items, default)
    except DimensionMismatch as exc:
        raise ParseError(str(exc)) from exc


def tensor_to_document(A: Tensor) -> dict[str, Any]:
    """Canonical document: every finite orbit listed once, default ``inf``."""
    return {
        "n": A.n,
        "m": A.m,
        "default": "inf",
        "entries": [{"idx": [i + 1] + [j + 1 for j in t], "val": format_value(v)}
                    for (i, t), v in A.items() if v != INF],
    }


def load_tensor(path) -> Tensor:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    return tensor_from_document(doc)


def exact(v) -> str:
    return format_value(v)


def decimal(v) -> float | None:
    if v == INF:
        return None
    return float(Fraction(v))


def vector(x) -> list[str]:
    return [exact(v) for v in x]


def key_to_idx(key) -> list[int]:
    """1-based full index list from a canonical ``(i, tail)`` or full tuple."""
    if len(key) == 2 and isinstance(key[1], tuple):
        return [key[0] + 1] + [j + 1 for j in key[1]]
    return [j + 1 for j in key]


def sparse(coords: dict) -> list[dict[str, Any]]:
    return [{"idx": key_to_idx(k), "val": exact(v)} for k, v in sorted(coords.items())]
