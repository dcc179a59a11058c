from __future__ import annotations

import hashlib
import json
import os
import tempfile
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

from riesz_lab.lattice.rational import format_rational


def to_jsonable(obj: Any) -> Any:
    """Convert exact values and domain objects into canonical JSON-ready data.

    Fractions become ``"p/q"`` strings; objects exposing ``to_json`` serialize themselves; dataclass-like
    verdicts become dicts. No floats are ever produced.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, float):
        raise TypeError("Floating point values are not serialized; use exact rationals")
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {name: to_jsonable(getattr(obj, name)) for name in obj.__dataclass_fields__}
    raise TypeError(f"Cannot serialize {type(obj).__name__}")


def canonical_dumps(payload: Any, indent: int | None = None) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, ASCII only."""
    separators = (",", ": ") if indent is not None else (",", ":")
    return json.dumps(payload, sort_keys=True, indent=indent, separators=separators, ensure_ascii=True)


def config_digest(payload: Any) -> str:
    return hashlib.sha256(canonical_dumps(to_jsonable(payload)).encode()).hexdigest()


def write_atomically(path: str | Path, content: str) -> None:
    """Write ``content`` to a temporary file next to ``path`` and rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(content)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
