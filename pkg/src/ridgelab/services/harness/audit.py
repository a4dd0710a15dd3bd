"""Sup-norm error estimation on the closed unit ball."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy import optimize, special
from scipy.stats import qmc

from ...core.config import get_settings
from ...utils.seeding import spawn_rng, stable_key
from ..geometry.norms import sample_ball

logger = logging.getLogger(__name__)

Evaluable = Callable[[np.ndarray], Any]

_REFINE_TOL = 1e-10


@dataclass(slots=True)
class ErrorEstimate:
    """max |f − g| over the audited points: a lower estimate of the true sup error."""

    value: float
    argmax: list[float]
    points: int
    method: dict[str, int] = field(default_factory=dict)
    tolerance: float = 0.0

    def as_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "argmax": self.argmax,
            "points": self.points,
            "method": self.method,
            "tolerance": self.tolerance,
            "kind": "audited lower estimate",
        }


def sobol_ball(count: int, d: int, seed: int) -> np.ndarray:
    """Scrambled Sobol points in [0,1]^{d+1} mapped into B̄₂^d.

    The first d coordinates become a Gaussian direction through the inverse normal CDF, the last
    a radius u^{1/d}.
    """

    sampler = qmc.Sobol(d + 1, scramble=True, seed=spawn_rng(seed, stable_key("sobol")))
    power = max(0, int(np.ceil(np.log2(max(count, 1)))))
    cube = sampler.random_base2(power)[:count]
    cube = np.clip(cube, 1e-12, 1.0 - 1e-12)
    gauss = special.ndtri(cube[:, :d])
    norms = np.linalg.norm(gauss, axis=1, keepdims=True)
    directions = np.where(norms > 0, gauss / np.maximum(norms, 1e-300), 0.0)
    return directions * cube[:, d : d + 1] ** (1.0 / d)


def _values(f: Evaluable, points: np.ndarray) -> np.ndarray:
    return np.asarray(f(points), dtype=float).reshape(-1)


def _ridge_directions(*functions: Evaluable) -> list[np.ndarray]:
    directions = []
    for function in functions:
        direction = getattr(function, "ridge_direction", None)
        if direction is None:
            continue
        direction = np.asarray(direction, dtype=float).reshape(-1)
        size = float(np.linalg.norm(direction))
        if size > 0:
            directions.append(direction / size)
    return directions


def sup_error_estimate(
    f: Evaluable,
    g: Evaluable,
    d: int,
    grid_budget: int | None = None,
    seed: int | None = None,
    *,
    random_budget: int | None = None,
    line_points: int | None = None,
) -> ErrorEstimate:
    """max |f − g| over Sobol points, seeded uniform points and the ridge lines of f and g.

    Along each ridge line t ↦ tâ the best grid point is refined with a bounded scalar search.
    """

    settings = get_settings()
    grid_budget = settings.audit_grid_budget if grid_budget is None else grid_budget
    random_budget = settings.audit_random_budget if random_budget is None else random_budget
    line_points = settings.audit_line_points if line_points is None else line_points
    seed = settings.default_seed if seed is None else seed
    if grid_budget < 1 or random_budget < 1:
        msg = "Audit budgets must be at least 1"
        raise ValueError(msg)

    blocks = {
        "sobol": sobol_ball(grid_budget, d, seed),
        "random": sample_ball(spawn_rng(seed, stable_key("audit")), random_budget, d),
    }
    best_value = -1.0
    best_point = np.zeros(d)
    method: dict[str, int] = {}
    for name, points in blocks.items():
        gaps = np.abs(_values(f, points) - _values(g, points))
        index = int(np.argmax(gaps))
        method[name] = int(points.shape[0])
        if gaps[index] > best_value:
            best_value, best_point = float(gaps[index]), points[index]

    line_total = 0
    grid = np.linspace(-1.0, 1.0, line_points)
    for direction in _ridge_directions(f, g):
        line = grid[:, None] * direction[None, :]
        gaps = np.abs(_values(f, line) - _values(g, line))
        index = int(np.argmax(gaps))
        line_total += line_points
        if gaps[index] > best_value:
            best_value, best_point = float(gaps[index]), line[index]

        def negative_gap(t: float, direction: np.ndarray = direction) -> float:
            point = (t * direction)[None, :]
            return -float(np.abs(_values(f, point) - _values(g, point))[0])

        step = 2.0 / (line_points - 1)
        low, high = max(-1.0, grid[index] - step), min(1.0, grid[index] + step)
        refined = optimize.minimize_scalar(
            negative_gap, bounds=(low, high), method="bounded", options={"xatol": _REFINE_TOL}
        )
        line_total += int(refined.nfev)
        if -refined.fun > best_value:
            best_value, best_point = float(-refined.fun), refined.x * direction
    if line_total:
        method["ridge_line"] = line_total

    total = sum(method.values())
    logger.debug("Audited %d points, sup error estimate %.6g", total, best_value)
    return ErrorEstimate(
        value=max(best_value, 0.0),
        argmax=np.asarray(best_point, dtype=float).tolist(),
        points=total,
        method=method,
        tolerance=float(np.finfo(float).eps) * max(1.0, best_value),
    )


__all__ = ["ErrorEstimate", "sobol_ball", "sup_error_estimate"]
