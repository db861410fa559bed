"""Canonical JSON so replayed trajectories compare byte-for-byte.

Key order is the insertion order of the dicts handed in (snapshot payloads
are built with a fixed order), floats are rendered with 17 significant
digits (enough to round-trip any double exactly), and there is no
whitespace. Non-finite numbers are rejected.
"""

import math

import numpy as np


def _format_number(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("bool handled by caller")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"non-finite number {value} is not serializable")
    return format(value, ".17g")


def _escape(text: str) -> str:
    out = ['"']
    for ch in text:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def canonical_json(obj) -> str:
    """Serialize nested dicts/lists/scalars to canonical JSON text."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_number(obj)
    if isinstance(obj, str):
        return _escape(obj)
    if isinstance(obj, dict):
        items = ",".join(f"{_escape(str(k))}:{canonical_json(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(canonical_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__} canonically")
