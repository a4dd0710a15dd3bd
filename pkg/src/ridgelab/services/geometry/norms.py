"""Quasi-norms, domain checks and uniform samplers for ℓ_p balls and spheres."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.spatial import cKDTree

from ...core.exceptions import DomainError


@dataclass(frozen=True, slots=True)
class NormSpec:
    """An ℓ_p (quasi-)norm; ``p`` may be ``math.inf``."""

    p: float

    def __post_init__(self) -> None:
        if not (self.p > 0):
            msg = f"Norm exponent must be positive, got {self.p}"
            raise ValueError(msg)

    @property
    def is_quasi(self) -> bool:
        return self.p < 1

    @property
    def label(self) -> str:
        return "linf" if math.isinf(self.p) else f"l{self.p:g}"

    def __call__(self, x: np.ndarray, axis: int = -1) -> np.ndarray | float:
        return p_norm(x, self, axis=axis)


def as_norm(norm: NormSpec | float) -> NormSpec:
    return norm if isinstance(norm, NormSpec) else NormSpec(float(norm))


def p_norm(x: np.ndarray, p: NormSpec | float, axis: int = -1) -> np.ndarray | float:
    """Return (Σ|x_i|^p)^{1/p} along ``axis`` (max for p = ∞)."""

    exponent = as_norm(p).p
    values = np.abs(np.asarray(x, dtype=float))
    if values.size == 0:
        msg = "Cannot take the norm of an empty vector"
        raise ValueError(msg)
    if math.isinf(exponent):
        result = values.max(axis=axis)
    elif exponent == 2.0:
        result = np.sqrt(np.sum(values * values, axis=axis))
    elif exponent == 1.0:
        result = values.sum(axis=axis)
    else:
        result = np.sum(values**exponent, axis=axis) ** (1.0 / exponent)
    return float(result) if np.ndim(result) == 0 else result


def as_points(points: np.ndarray, d: int | None = None) -> np.ndarray:
    """Return ``points`` as a float array of shape (m, d)."""

    array = np.asarray(points, dtype=float)
    if array.ndim == 1:
        array = array.reshape(1, -1) if d is None or array.size == d else array.reshape(-1, 1)
    if array.ndim != 2:
        msg = f"Expected a point or a list of points, got shape {array.shape}"
        raise ValueError(msg)
    if d is not None and array.shape[1] != d:
        msg = f"Expected points in dimension {d}, got {array.shape[1]}"
        raise ValueError(msg)
    return array


def ensure_in_domain(points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Raise ``DomainError`` when a point leaves the closed Euclidean unit ball."""

    if points.size == 0:
        return points
    radii = np.sqrt(np.sum(points * points, axis=1))
    worst = int(np.argmax(radii))
    if radii[worst] > 1.0 + tol:
        msg = f"Point {points[worst].tolist()} has Euclidean norm {radii[worst]:.6g} > 1"
        raise DomainError(msg)
    return points


def nearest_centers(
    points: np.ndarray, centers: np.ndarray, norm: NormSpec | float, *, tree: cKDTree | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Return (index, distance) of the nearest center for every point.

    Ties between the two nearest centers go to the lower index. Quasi-norms (p < 1) are handled by
    brute force since KD-trees need a Minkowski norm.
    """

    if centers.shape[0] == 0:
        msg = "No centers to assign points to"
        raise ValueError(msg)
    exponent = as_norm(norm).p
    if exponent >= 1:
        tree = tree if tree is not None else cKDTree(centers)
        k = min(2, centers.shape[0])
        distances, indices = tree.query(points, k=k, p=exponent)
        if k == 1:
            return np.asarray(indices, dtype=int), np.asarray(distances, dtype=float)
        tied = np.isclose(distances[:, 0], distances[:, 1], rtol=1e-12, atol=1e-15)
        chosen = np.where(tied, np.minimum(indices[:, 0], indices[:, 1]), indices[:, 0])
        return chosen.astype(int), distances[:, 0].astype(float)

    chosen = np.empty(points.shape[0], dtype=int)
    best = np.empty(points.shape[0], dtype=float)
    chunk = max(1, 2_000_000 // max(1, centers.size))
    for start in range(0, points.shape[0], chunk):
        block = points[start : start + chunk]
        dist = p_norm(block[:, None, :] - centers[None, :, :], exponent, axis=2)
        chosen[start : start + chunk] = np.argmin(dist, axis=1)
        best[start : start + chunk] = dist.min(axis=1)
    return chosen, best


def sample_ball(rng: np.random.Generator, count: int, d: int, p: float = 2.0) -> np.ndarray:
    """Draw ``count`` points uniformly from the closed unit ball of ℓ_p^d."""

    if count <= 0:
        return np.empty((0, d))
    if math.isinf(p):
        return rng.uniform(-1.0, 1.0, size=(count, d))
    if p == 2.0:
        directions = rng.standard_normal((count, d))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = rng.uniform(size=count) ** (1.0 / d)
        return directions * radii[:, None]
    # Generalized-normal coordinates with an exponential slack give the uniform law on B_p^d.
    coords = stats.gennorm.rvs(beta=p, size=(count, d), random_state=rng)
    slack = rng.exponential(size=count)
    scale = (np.sum(np.abs(coords) ** p, axis=1) + slack) ** (1.0 / p)
    return coords / scale[:, None]


def sample_sphere(rng: np.random.Generator, count: int, d: int, p: float = 2.0) -> np.ndarray:
    """Draw ``count`` points on the unit sphere of ℓ_p^d (cone measure)."""

    if count <= 0:
        return np.empty((0, d))
    if math.isinf(p):
        points = rng.uniform(-1.0, 1.0, size=(count, d))
        faces = rng.integers(0, d, size=count)
        points[np.arange(count), faces] = rng.choice([-1.0, 1.0], size=count)
        return points
    if p == 2.0:
        coords = rng.standard_normal((count, d))
    else:
        coords = stats.gennorm.rvs(beta=p, size=(count, d), random_state=rng)
    return coords / np.asarray(p_norm(coords, p, axis=1))[:, None]


def normalize(x: np.ndarray) -> np.ndarray:
    """Ψ: x ↦ x/‖x‖₂ row-wise."""

    array = np.asarray(x, dtype=float)
    norms = np.linalg.norm(array, axis=-1, keepdims=True)
    if np.any(norms == 0):
        msg = "Cannot normalize the zero vector"
        raise ValueError(msg)
    return array / norms


__all__ = [
    "NormSpec",
    "as_norm",
    "as_points",
    "ensure_in_domain",
    "nearest_centers",
    "normalize",
    "p_norm",
    "sample_ball",
    "sample_sphere",
]
