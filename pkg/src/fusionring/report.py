"""Ordered key/value reports rendered as indented text or JSON pair-arrays."""
from __future__ import annotations

import json


class Report:
    """An ordered list of ``(key, value)`` pairs; a value may be a nested Report.

    Numbers render with explicit precision: integers bare, reals with 12
    significant digits.  JSON output keeps order by using ``[key, value]``
    arrays instead of objects.
    """

    def __init__(self):
        self.items = []

    def add(self, key, value):
        self.items.append((str(key), value))
        return value

    def section(self, key) -> "Report":
        return self.add(key, Report())

    def keys(self, prefix=""):
        out = []
        for k, v in self.items:
            out.append(prefix + k)
            if isinstance(v, Report):
                out.extend(v.keys(prefix + k + "."))
        return out

    def to_text(self, indent=0) -> str:
        lines = []
        pad = "  " * indent
        for k, v in self.items:
            if isinstance(v, Report):
                lines.append(f"{pad}{k}:")
                body = v.to_text(indent + 1)
                if body:
                    lines.append(body.rstrip("\n"))
            else:
                lines.append(f"{pad}{k}: {format_value(v)}")
        return "\n".join(lines) + ("\n" if lines and indent == 0 else "")

    def to_json_obj(self):
        return [[k, v.to_json_obj() if isinstance(v, Report) else _jsonable(v)]
                for k, v in self.items]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=1) + "\n"

    def render(self, fmt="text") -> str:
        return self.to_json() if fmt == "json" else self.to_text()


def format_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def format_value(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, (bool, int, float)):
        return format_number(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(format_value(x) for x in v) + "]"
    return str(v)


def _jsonable(v):
    if isinstance(v, float):
        return float(f"{v:.12g}")
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if v is None or isinstance(v, (bool, int, str)):
        return v
    return str(v)
