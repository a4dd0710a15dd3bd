"""First-order recovery of the ridge direction from d+1 function values."""

from __future__ import annotations

import logging
from collections.abc import Generator
from dataclasses import dataclass
from typing import Any

import numpy as np

from .types import Oracle, RecoveryParams

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class RecoveredDirection:
    """â = ã/‖ã‖₂ from forward differences ã_i = (f(h e_i) − f(0))/h."""

    direction: np.ndarray
    raw: np.ndarray
    f0: float
    queries: int
    degenerate: bool = False

    def as_dict(self) -> dict[str, Any]:
        return {
            "direction": self.direction.tolist(),
            "raw": self.raw.tolist(),
            "f0": self.f0,
            "queries": self.queries,
            "degenerate": self.degenerate,
        }


def direction_dialogue(
    d: int, params: RecoveryParams, *, allow_zero: bool = False
) -> Generator[np.ndarray, float, RecoveredDirection]:
    """Query 0 then h e_1, …, h e_d.

    A vanishing difference vector violates the derivative-floor precondition; it raises unless
    ``allow_zero`` is set, in which case e_1 is returned and flagged degenerate.
    """

    h = params.h
    f0 = yield np.zeros(d)
    raw = np.empty(d)
    for axis in range(d):
        point = np.zeros(d)
        point[axis] = h
        raw[axis] = ((yield point) - f0) / h

    size = float(np.linalg.norm(raw))
    if size == 0.0:
        if not allow_zero:
            msg = "Difference vector is zero; the profile violates |g'(0)| >= kappa"
            raise ValueError(msg)
        logger.warning("Direction recovery saw a zero difference vector; falling back to e_1")
        direction = np.zeros(d)
        direction[0] = 1.0
        return RecoveredDirection(direction, raw, float(f0), d + 1, degenerate=True)
    return RecoveredDirection(raw / size, raw, float(f0), d + 1)


def recover_direction(f: Oracle, params: RecoveryParams, d: int) -> tuple[np.ndarray, int]:
    """Return (â, queries used) with ‖a/‖a‖₂ − â‖₂ ≤ ε when f ∈ R^{1+β,2,κ}."""

    dialogue = direction_dialogue(d, params)
    try:
        point = next(dialogue)
        while True:
            point = dialogue.send(float(f(point)))
    except StopIteration as stop:
        result: RecoveredDirection = stop.value
    return result.direction, result.queries


__all__ = ["RecoveredDirection", "direction_dialogue", "recover_direction"]
