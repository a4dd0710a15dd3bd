"""Fooling ridge functions that vanish on every queried point."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import linalg

from ..classes.catalog import (
    GAMMA,
    INTERVAL,
    bump_scale,
    catalog_profile,
    fooling_normalizer,
    fooling_profile,
    sine_with_bumps,
)
from ..classes.types import ClassSpec, RidgeFunction
from .types import DirectionSet

logger = logging.getLogger(__name__)

_RANK_TOL = 1e-10


def _min_distances(points: np.ndarray, dirs: DirectionSet) -> np.ndarray:
    """min_i ‖x_i − Ψ(a)‖₂ for every member a (∞ without points)."""

    images = dirs.psi()
    if points.size == 0:
        return np.full(dirs.size, np.inf)
    gaps = np.linalg.norm(images[:, None, :] - points[None, :, :], axis=2)
    return gaps.min(axis=1)


def qualifying_directions(points: np.ndarray, dirs: DirectionSet, eps: float) -> np.ndarray:
    """Mask of members a with ‖x_i − Ψ(a)‖₂ > ε for every queried x_i."""

    points = np.asarray(points, dtype=float).reshape(-1, dirs.d)
    return _min_distances(points, dirs) > eps


def fooling_ridge(
    points: np.ndarray, dirs: DirectionSet, eps: float, alpha: float
) -> RidgeFunction | None:
    """f(x) = g_{a,ε}(a·x) for the qualifying member farthest from the queries, or ``None``.

    g_{a,ε}(t) = θ_α (t − ‖a‖₂(1 − ε²/2))₊^α vanishes wherever ‖x − Ψ(a)‖₂ > ε, so f is zero on
    every query; its maximum θ_α(‖a‖₂ε²/2)^α is attained at Ψ(a).
    """

    if not 0 < eps < 1:
        msg = f"Fooling radius must lie in (0, 1), got eps={eps}"
        raise ValueError(msg)
    if math.isinf(alpha):
        msg = "No fooling profile exists for alpha = inf"
        raise ValueError(msg)
    points = np.asarray(points, dtype=float).reshape(-1, dirs.d)
    distances = _min_distances(points, dirs)
    qualifying = distances > eps
    if not np.any(qualifying):
        logger.debug("No direction escapes the %d queries at eps=%.4g", points.shape[0], eps)
        return None

    # argmax returns the lowest index among ties.
    choice = int(np.argmax(np.where(qualifying, distances, -np.inf)))
    direction = dirs.members[choice]
    profile = fooling_profile(float(np.linalg.norm(direction)), eps, alpha)
    f = RidgeFunction(direction, profile, dirs.p)
    if points.shape[0]:
        values = np.asarray(f(points))
        if np.any(values != 0.0):
            msg = "Fooling function does not vanish on the queried points"
            raise RuntimeError(msg)
    return f


def fooling_floor(direction: np.ndarray, eps: float, alpha: float) -> float:
    """θ_α 2^{−α} ‖a‖₂^α ε^{2α}, the sup norm of the fooling function."""

    anorm = float(np.linalg.norm(direction))
    return fooling_normalizer(alpha) * (anorm * eps * eps / 2.0) ** alpha


def orthogonal_direction(points: np.ndarray, d: int | None = None) -> np.ndarray:
    """A unit vector orthogonal to every query point (first basis vector of the null space)."""

    points = np.atleast_2d(np.asarray(points, dtype=float))
    d = points.shape[1] if d is None else d
    if points.size == 0:
        direction = np.zeros(d)
        direction[0] = 1.0
        return direction
    q, r, _ = linalg.qr(points.T, mode="full", pivoting=True)
    diagonal = np.abs(np.diag(r))
    scale = diagonal[0] if diagonal.size else 0.0
    rank = int(np.sum(diagonal > _RANK_TOL * max(scale, 1.0)))
    if rank >= d:
        msg = f"The {points.shape[0]} query points span R^{d}; no orthogonal direction exists"
        raise ValueError(msg)
    direction = q[:, rank]
    return direction / np.linalg.norm(direction)


@dataclass(slots=True, eq=False)
class UnivariateFooling:
    """sin(x₁) and its two bump perturbations, identical off the free cell."""

    f: RidgeFunction
    f_plus: RidgeFunction
    f_minus: RidgeFunction
    cell: tuple[float, float]
    centre: float
    gap: float

    def as_dict(self) -> dict[str, Any]:
        return {"cell": list(self.cell), "centre": self.centre, "gap": self.gap}


def univariate_fooling(
    first_coords: Sequence[float], alpha: float, kappa: float = 1.0, d: int = 1
) -> UnivariateFooling:
    """Perturb sin along e₁ by ±(1−γ)ψ_{2n,b} on the leftmost cell of I free of samples.

    I is split into 2n cells of length 1/(5n); a cell is free when no first coordinate lies in its
    open interior. ‖f₊ − f₋‖∞ = 2(1−γ)c_α e^{−1}(2n)^{−α}.
    """

    coords = np.asarray(list(first_coords), dtype=float)
    n = coords.size
    if n < 1:
        msg = "Need at least one sampled coordinate"
        raise ValueError(msg)
    if math.isinf(alpha) or alpha <= 1:
        msg = f"Univariate fooling needs 1 < alpha < inf, got alpha={alpha}"
        raise ValueError(msg)

    cells = 2 * n
    width = 1.0 / (5.0 * n)
    lefts = INTERVAL[0] + width * np.arange(cells)
    hit = (coords[None, :] > lefts[:, None]) & (coords[None, :] < lefts[:, None] + width)
    free = np.flatnonzero(~hit.any(axis=1))
    if free.size == 0:
        msg = f"All {cells} cells of I contain a sample; inconsistent input for n={n}"
        raise ValueError(msg)
    left = float(lefts[free[0]])
    centre = left + width / 2.0

    spec = ClassSpec(alpha=alpha, p=2.0, kappa=kappa, d=d)
    direction = np.zeros(d)
    direction[0] = 1.0
    plus = sine_with_bumps([1.0], [centre], cells, alpha)
    minus = sine_with_bumps([-1.0], [centre], cells, alpha)
    gap = 2.0 * (1.0 - GAMMA) * bump_scale(alpha) * math.exp(-1.0) * cells ** (-alpha)
    return UnivariateFooling(
        f=RidgeFunction(direction, catalog_profile("sine", spec)),
        f_plus=RidgeFunction(direction, plus),
        f_minus=RidgeFunction(direction, minus),
        cell=(left, left + width),
        centre=centre,
        gap=gap,
    )


__all__ = [
    "UnivariateFooling",
    "fooling_floor",
    "fooling_ridge",
    "orthogonal_direction",
    "qualifying_directions",
    "univariate_fooling",
]
