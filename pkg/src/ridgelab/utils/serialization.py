"""JSON helpers for reports and HTTP payloads."""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np


def jsonable(value: Any) -> Any:
    """Replace non-finite floats (inf → "inf") and numpy scalars recursively."""

    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        if math.isnan(value):
            return "nan"
        return "inf" if value > 0 else "-inf"
    return value


def dumps(value: Any) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""

    return json.dumps(jsonable(value), sort_keys=True, indent=2) + "\n"


__all__ = ["dumps", "jsonable"]
