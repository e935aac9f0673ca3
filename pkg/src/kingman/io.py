"""JSON/CSV serialization with fixed 17-significant-digit number formatting."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np


class ParseError(ValueError):
    """Input file could not be parsed into the expected document."""


def format_number(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    return format(x, ".17g")


def dumps(obj) -> str:
    """Deterministic JSON text; every float carries 17 significant digits."""
    parts: list[str] = []
    _encode(obj, parts)
    return "".join(parts)


def _encode(obj, out):
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_, int, float, np.integer, np.floating)):
        out.append(format_number(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _encode(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(", ")
            _encode(value, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_text(text: str, path: str | Path | None) -> None:
    """Write to ``path``, or to stdout when ``path`` is None."""
    if path is None:
        import sys

        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else format_number(v) for v in row])
    return buf.getvalue()


def load_document(path: str | Path):
    """Parse a JSON document, or a one-column CSV of values into {"samples": [...]}."""
    text = Path(path).read_text()
    if not text.strip():
        raise ParseError(f"{path}: empty file")
    stripped = text.lstrip()
    if stripped[0] in "{[":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
        if isinstance(doc, list):
            doc = {"type": "empirical", "samples": doc}
        return doc
    values = []
    for i, row in enumerate(csv.reader(io.StringIO(text))):
        if not row or not row[0].strip():
            continue
        try:
            values.append(float(row[0]))
        except ValueError:
            if i == 0:
                continue  # header line
            raise ParseError(f"{path}: line {i + 1}: not a number: {row[0]!r}") from None
    if not values:
        raise ParseError(f"{path}: no values")
    return {"type": "empirical", "samples": values}
