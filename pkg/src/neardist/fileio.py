"""JSON and CSV serialization for point sets, interval families, and reports.

Point sets: {"dim": 2, "points": [[x, y], ...]} in JSON, or one "x,y" row per
point in CSV. Interval families: {"alpha": a, "t": [...]}. Floats are written
with Python's shortest round-trip representation, so JSON round-trips are
bit-exact and CSV carries full precision. All writes are atomic (temp file
plus rename).
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .geometry import IntervalFamily, PointSet

__all__ = [
    "InputFormatError",
    "UnsupportedDimensionError",
    "load_point_set",
    "save_point_set",
    "load_intervals",
    "save_intervals",
    "write_json",
    "write_text",
]


class InputFormatError(ValueError):
    """Malformed or semantically invalid input file."""


class UnsupportedDimensionError(ValueError):
    """Structurally valid input in an unsupported dimension (only dim 2 works)."""


def write_text(path: str | Path, text: str) -> None:
    """Atomically write text: temp file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_json(path: str | Path, payload: dict) -> None:
    write_text(path, json.dumps(payload, indent=2) + "\n")


def _load_json(path: str | Path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise InputFormatError(f"{path}: expected a JSON object, got {type(payload).__name__}")
    return payload


def load_point_set(path: str | Path) -> PointSet:
    """Load a point set from .json or .csv (by suffix)."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _load_point_set_csv(path)
    payload = _load_json(path)
    dim = payload.get("dim")
    if dim != 2:
        raise UnsupportedDimensionError(f"{path}: only dim 2 is supported, got {dim!r}")
    points = payload.get("points")
    if not isinstance(points, list) or not points:
        raise InputFormatError(f"{path}: 'points' must be a non-empty list")
    try:
        rows = [(float(p[0]), float(p[1])) for p in points]
        if any(len(p) != 2 for p in points):
            raise UnsupportedDimensionError(f"{path}: every point must have 2 coordinates")
        return PointSet(rows)
    except UnsupportedDimensionError:
        raise
    except (TypeError, ValueError, IndexError) as exc:
        raise InputFormatError(f"{path}: bad point data: {exc}") from exc


def _load_point_set_csv(path: Path) -> PointSet:
    rows: list[tuple[float, float]] = []
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                line = line.strip()
                if not line:
                    continue
                parts = line.split(",")
                if len(parts) != 2:
                    raise InputFormatError(
                        f"{path}:{line_no}: expected 'x,y', got {line!r}"
                    )
                rows.append((float(parts[0]), float(parts[1])))
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise InputFormatError(f"{path}: bad coordinate: {exc}") from exc
    if not rows:
        raise InputFormatError(f"{path}: no points")
    try:
        return PointSet(rows)
    except ValueError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


def save_point_set(ps: PointSet, path: str | Path) -> None:
    """Write a point set as .json or .csv (by suffix)."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        lines = [f"{float(x)!r},{float(y)!r}" for x, y in ps.coords]
        write_text(path, "\n".join(lines) + "\n")
    else:
        write_json(path, ps.to_dict())


def load_intervals(path: str | Path) -> IntervalFamily:
    payload = _load_json(path)
    t = payload.get("t")
    alpha = payload.get("alpha")
    if not isinstance(t, list):
        raise InputFormatError(f"{path}: 't' must be a list")
    try:
        return IntervalFamily([float(v) for v in t], float(alpha))
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"{path}: bad interval family: {exc}") from exc


def save_intervals(iv: IntervalFamily, path: str | Path) -> None:
    write_json(path, iv.to_dict())
