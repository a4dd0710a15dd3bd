"""Families of disjoint radial bumps on the unit ball (general Lipschitz functions, α ≤ 2)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import numpy as np
from scipy.spatial import cKDTree

from ...core.config import get_settings
from ..classes.bump import bump
from ..classes.catalog import certificate
from ..geometry.nets import greedy_packing
from ..geometry.norms import as_points
from ..geometry.types import Target

_RADIAL_GRID = 200_001


@lru_cache(maxsize=None)
def radial_bump_scale(alpha: float) -> float:
    """c_α = 1/N with N a norm certificate of the radial bump φ(‖x‖₂) in Lip_α, α ≤ 2.

    Sups of the value, the gradient (|φ'(r)|) and the Hessian (max{|φ''(r)|, |φ'(r)/r|}) feed
    the same certificate the catalog uses.
    """

    if not 0 < alpha <= 2:
        msg = f"Radial bump families support 0 < alpha <= 2, got alpha={alpha}"
        raise ValueError(msg)
    r = np.linspace(0.0, 1.0, _RADIAL_GRID)[1:]
    first = np.abs(bump(r, 1))
    hessian = np.maximum(np.abs(bump(r, 2)), first / r)
    sups = [float(bump(np.array(0.0))), float(first.max()), float(hessian.max())]
    return 1.0 / max(1.0, certificate(sups, alpha))


@dataclass(slots=True, eq=False)
class BumpFunction:
    """f_θ(x) = Σ θ_j c_α ε^α φ((x − x_j)/ε) with disjoint supports."""

    centers: np.ndarray
    theta: np.ndarray
    eps: float
    alpha: float
    scale: float
    _tree: cKDTree | None = None

    @property
    def d(self) -> int:
        return int(self.centers.shape[1])

    def _nearest(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        points = as_points(np.atleast_1d(x), self.d)
        if self._tree is None:
            self._tree = cKDTree(self.centers)
        distances, indices = self._tree.query(points, k=1)
        return points, np.asarray(distances, dtype=float), np.asarray(indices, dtype=int)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        _, distances, indices = self._nearest(x)
        height = self.scale * self.eps**self.alpha
        return self.theta[indices] * height * bump(distances / self.eps)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        points, distances, indices = self._nearest(x)
        offsets = points - self.centers[indices]
        slope = self.scale * self.eps ** (self.alpha - 1.0) * bump(distances / self.eps, 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            unit = np.where(distances[:, None] > 0, offsets / distances[:, None], 0.0)
        return (self.theta[indices] * slope)[:, None] * unit


@dataclass(slots=True, eq=False)
class BumpFamily:
    """The 2^n functions f_θ, θ ∈ {0,1}^n, over a 2ε-separated set of centers."""

    centers: np.ndarray
    eps: float
    alpha: float
    scale: float

    @property
    def size(self) -> int:
        return int(self.centers.shape[0])

    @property
    def separation(self) -> float:
        """c_α e^{−1} ε^α: the sup distance between members differing in any coordinate."""

        return self.scale * math.exp(-1.0) * self.eps**self.alpha

    def member(self, theta: np.ndarray | list[int]) -> BumpFunction:
        bits = np.asarray(theta, dtype=float).reshape(-1)
        if bits.size != self.size or np.any((bits != 0.0) & (bits != 1.0)):
            msg = f"theta must be a 0/1 vector of length {self.size}"
            raise ValueError(msg)
        return BumpFunction(self.centers, bits, self.eps, self.alpha, self.scale)

    def distance(self, theta: np.ndarray | list[int], other: np.ndarray | list[int]) -> float:
        """Exact ‖f_θ − f_θ'‖∞ (bump supports are disjoint, all peaks equal)."""

        differ = np.any(np.asarray(theta) != np.asarray(other))
        return self.separation if differ else 0.0

    def as_dict(self) -> dict[str, Any]:
        return {
            "centers": self.size,
            "eps": self.eps,
            "alpha": self.alpha,
            "scale": self.scale,
            "separation": self.separation,
        }


def lipschitz_bump_adversary(
    d: int, alpha: float, eps: float, *, seed: int | None = None, budget: int | None = None
) -> BumpFamily:
    """Greedy-pack 2ε-separated centers in B̄₂^d and return the bump family over them."""

    if not 0 < eps <= 1:
        msg = f"Bump radius must lie in (0, 1], got eps={eps}"
        raise ValueError(msg)
    scale = radial_bump_scale(alpha)
    seed = get_settings().default_seed if seed is None else seed
    if d == 1:
        source: Any = np.linspace(-1.0, 1.0, int(math.ceil(4.0 / eps)) + 1).reshape(-1, 1)
        net = greedy_packing(source, 2.0 * eps, 2.0, budget=source.shape[0], seed=seed)
    else:
        net = greedy_packing(Target.ball(d, 2.0), 2.0 * eps, 2.0, budget=budget, seed=seed)
    if net.size < 2:
        msg = f"Packing at separation {2.0 * eps:g} holds {net.size} center(s); need at least 2"
        raise ValueError(msg)
    return BumpFamily(centers=net.centers, eps=eps, alpha=alpha, scale=scale)


__all__ = ["BumpFamily", "BumpFunction", "lipschitz_bump_adversary", "radial_bump_scale"]
