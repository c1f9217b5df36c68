"""Deterministic JSON / CSV / text emission.

CSV numbers use 17 significant digits ('%.17g'), '.' decimals and plain
newline terminators, so binary64 values round-trip exactly and identical
inputs produce byte-identical files regardless of locale.
"""

from __future__ import annotations

import json
from typing import Iterable

import numpy as np

__all__ = ["csv_rows", "format_number", "json_bytes", "sanitize", "text_table"]


def format_number(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.17g" % float(value)


def csv_rows(header: Iterable[str], rows: Iterable[Iterable]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_number(v) if not isinstance(v, str) else v for v in row))
    return "\n".join(lines) + "\n"


def sanitize(obj):
    if isinstance(obj, dict):
        return {k: sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [sanitize(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def json_bytes(obj) -> bytes:
    return (json.dumps(sanitize(obj), indent=2, sort_keys=True) + "\n").encode("ascii")


def text_table(rows: Iterable[Iterable[str]]) -> str:
    rows = [list(map(str, r)) for r in rows]
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows) + "\n"
