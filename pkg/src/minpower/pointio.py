"""Point file parsing and round-trip-exact writers."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import EmptyInput, ParseError
from .geometry import PointSet, as_pointset


def _number(tok: str, line: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"not a number: {tok!r}", line) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite value {tok!r}", line)
    return v


def _is_numeric_row(text: str) -> bool:
    parts = [p.strip() for p in text.split(",")]
    try:
        [float(p) for p in parts]
    except ValueError:
        return False
    return True


def parse_text(text: str) -> PointSet:
    """Parse CSV lines ``x,y`` (optional header) or a JSON array of pairs."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        return _parse_json(text)
    rows = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not rows and not header_seen and not _is_numeric_row(line):
            header_seen = True
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise ParseError(f"expected 2 fields, got {len(parts)}", lineno)
        rows.append((_number(parts[0], lineno), _number(parts[1], lineno)))
    if not rows:
        raise EmptyInput("no points in input")
    return PointSet(rows)


def _parse_json(text: str) -> PointSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(data, list):
        raise ParseError("top-level JSON value must be an array", 1)
    if not data:
        raise EmptyInput("no points in input")
    rows = []
    for k, item in enumerate(data):
        ok = (isinstance(item, list) and len(item) == 2
              and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item))
        if not ok:
            raise ParseError(f"element {k} is not an [x, y] pair", _json_line(text, k))
        if not all(math.isfinite(v) for v in item):
            raise ParseError(f"element {k} has a non-finite value", _json_line(text, k))
        rows.append((float(item[0]), float(item[1])))
    return PointSet(rows)


def _json_line(text: str, k: int) -> int:
    """Best-effort line of the k-th inner array."""
    depth, count = 0, -1
    line = 1
    for ch in text:
        if ch == "\n":
            line += 1
        elif ch == "[":
            depth += 1
            if depth == 2:
                count += 1
                if count == k:
                    return line
        elif ch == "]":
            depth -= 1
    return line


def parse_points(path) -> PointSet:
    text = Path(path).read_text()
    if text.lstrip().startswith("[") or Path(path).suffix.lower() == ".json":
        if not text.strip():
            raise EmptyInput("no points in input")
        return _parse_json(text)
    return parse_text(text)


def fmt(v: float) -> str:
    return format(float(v), ".17g")


def points_to_csv(X) -> str:
    X = as_pointset(X)
    return "".join(f"{fmt(x)},{fmt(y)}\n" for x, y in X.coords)


def write_points(X, path, kind: str | None = None) -> None:
    path = Path(path)
    kind = kind or ("json" if path.suffix.lower() == ".json" else "csv")
    if kind == "json":
        path.write_text(dumps(as_pointset(X).coords.tolist()) + "\n")
    else:
        path.write_text(points_to_csv(X))


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written at 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite number {obj!r} in JSON output")
        return fmt(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        obj = list(obj)
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, (bool, np.bool_)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")
