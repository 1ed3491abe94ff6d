"""JSON and CSV emission with a fixed decimal representation.

All persisted numbers use 17 significant digits, which is enough to
round-trip any IEEE-754 double exactly.  Parsing uses the standard json
module; only writing needs the custom path.
"""

from __future__ import annotations

import json
import math

import numpy as np


def fmt(x) -> str:
    """Format one float with 17 significant digits."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x, ".17g")


def dumps(obj, *, indent: int | None = None) -> str:
    """Serialize to JSON, formatting every float via :func:`fmt`."""
    return _dump(obj, indent, 0)


def _dump(obj, indent, depth) -> str:
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        items = [_dump(v, indent, depth + 1) for v in obj]
        return _join(items, "[", "]", indent, depth)
    if isinstance(obj, dict):
        items = [
            f"{json.dumps(str(k))}: {_dump(v, indent, depth + 1)}"
            for k, v in obj.items()
        ]
        return _join(items, "{", "}", indent, depth)
    raise TypeError(f"cannot serialize object of type {type(obj).__name__}")


def _join(items, opener, closer, indent, depth) -> str:
    if indent is None:
        return opener + ", ".join(items) + closer
    if not items:
        return opener + closer
    pad = " " * (indent * (depth + 1))
    end = " " * (indent * depth)
    body = (",\n" + pad).join(items)
    return f"{opener}\n{pad}{body}\n{end}{closer}"
