"""Shared types for covers, packings and entropy estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import pdist

from .norms import NormSpec, nearest_centers, p_norm, sample_ball, sample_sphere


class TargetKind(Enum):
    """Sets that covers and packings are built for."""

    BALL = "ball"
    SPHERE = "sphere"
    SPARSE_SPHERE = "sparse"
    FINITE = "finite"


class NetRole(Enum):
    """Whether a net certifies a covering radius or a separation."""

    COVER = "cover"
    PACKING = "packing"


@dataclass(frozen=True, slots=True, eq=False)
class Target:
    """Descriptor of a covered or packed set in R^d."""

    kind: TargetKind
    d: int
    p: float = 2.0
    m: int | None = None
    points: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.d < 1:
            msg = f"Dimension must be at least 1, got {self.d}"
            raise ValueError(msg)
        if self.kind is TargetKind.FINITE:
            if self.points is None:
                msg = "Finite targets need explicit points"
                raise ValueError(msg)
            points = np.array(self.points, dtype=float).reshape(-1, self.d)
            points.setflags(write=False)
            object.__setattr__(self, "points", points)
        if self.kind is TargetKind.SPARSE_SPHERE and not (self.m and 1 <= self.m <= self.d):
            msg = f"Sparse sphere needs 1 <= m <= d, got m={self.m}, d={self.d}"
            raise ValueError(msg)

    @classmethod
    def ball(cls, d: int, p: float = 2.0) -> Target:
        return cls(TargetKind.BALL, d, p)

    @classmethod
    def sphere(cls, d: int, p: float = 2.0) -> Target:
        return cls(TargetKind.SPHERE, d, p)

    @classmethod
    def sparse_sphere(cls, d: int, m: int) -> Target:
        """Euclidean unit vectors with m nonzero entries of equal modulus (the Ψ-image)."""

        return cls(TargetKind.SPARSE_SPHERE, d, 2.0, m=m)

    @classmethod
    def finite(cls, points: np.ndarray) -> Target:
        array = np.atleast_2d(np.asarray(points, dtype=float))
        return cls(TargetKind.FINITE, array.shape[1], points=array)

    def outer_radius(self, norm: NormSpec) -> float:
        """sup of ‖x‖_q over the target, i.e. the radius at which the origin alone covers it."""

        q = norm.p
        if self.kind is TargetKind.FINITE:
            assert self.points is not None
            return float(np.max(p_norm(self.points, q, axis=1))) if len(self.points) else 0.0
        if self.kind is TargetKind.SPARSE_SPHERE:
            assert self.m is not None
            return 1.0 if q >= 2 else float(self.m ** (1.0 / q - 0.5))
        if q >= self.p:
            return 1.0
        return float(self.d ** (1.0 / q - (0.0 if math.isinf(self.p) else 1.0 / self.p)))

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Draw candidate points of the target."""

        if self.kind is TargetKind.BALL:
            return sample_ball(rng, count, self.d, self.p)
        if self.kind is TargetKind.SPHERE:
            return sample_sphere(rng, count, self.d, self.p)
        if self.kind is TargetKind.SPARSE_SPHERE:
            assert self.m is not None
            points = np.zeros((count, self.d))
            for row in range(count):
                support = rng.choice(self.d, size=self.m, replace=False)
                points[row, support] = rng.choice([-1.0, 1.0], size=self.m)
            return points / math.sqrt(self.m)
        assert self.points is not None
        return rng.permutation(self.points)[:count]

    def as_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"kind": self.kind.value, "d": self.d, "p": _finite(self.p)}
        if self.m is not None:
            payload["m"] = self.m
        if self.points is not None:
            payload["size"] = int(self.points.shape[0])
        return payload


@dataclass(slots=True, eq=False)
class Net:
    """A finite point set acting as an ε-cover or an ε-packing of ``target``."""

    centers: np.ndarray
    radius: float
    norm: NormSpec
    role: NetRole
    target: Target
    metadata: dict[str, Any] = field(default_factory=dict)
    _tree: cKDTree | None = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        self.centers = np.asarray(self.centers, dtype=float).reshape(-1, self.target.d)

    @property
    def size(self) -> int:
        return int(self.centers.shape[0])

    @property
    def d(self) -> int:
        return self.target.d

    def __len__(self) -> int:
        return self.size

    def assign(self, points: np.ndarray) -> np.ndarray:
        """Cell index of every point: nearest center, ties to the lowest index."""

        if self._tree is None and self.norm.p >= 1 and self.size:
            self._tree = cKDTree(self.centers)
        indices, _ = nearest_centers(points, self.centers, self.norm, tree=self._tree)
        return indices

    def audit(self, points: np.ndarray) -> float:
        """Largest distance from ``points`` to their nearest center."""

        if points.shape[0] == 0:
            return 0.0
        if self._tree is None and self.norm.p >= 1 and self.size:
            self._tree = cKDTree(self.centers)
        _, distances = nearest_centers(points, self.centers, self.norm, tree=self._tree)
        return float(distances.max())

    def min_separation(self) -> float:
        """Smallest pairwise center distance (∞ for fewer than two centers)."""

        if self.size < 2:
            return math.inf
        if math.isinf(self.norm.p):
            return float(pdist(self.centers, "chebyshev").min())
        if self.norm.p >= 1:
            return float(pdist(self.centers, "minkowski", p=self.norm.p).min())
        diffs = self.centers[:, None, :] - self.centers[None, :, :]
        dist = np.asarray(p_norm(diffs, self.norm, axis=2))
        return float(dist[np.triu_indices(self.size, k=1)].min())

    def as_dict(self) -> dict[str, Any]:
        return {
            "role": self.role.value,
            "radius": self.radius,
            "norm": self.norm.label,
            "size": self.size,
            "target": self.target.as_dict(),
            "metadata": dict(self.metadata),
        }


@dataclass(slots=True)
class EntropyEstimate:
    """Bracket [lower, upper] for e_k(target, ℓ_q) plus the closed-form reference value."""

    k: int
    lower: float
    upper: float
    formula_value: float | None = None
    method: str = "lattice-cover/greedy-packing"

    def contains(self, value: float, rel_tol: float = 0.0) -> bool:
        return self.lower * (1 - rel_tol) <= value <= self.upper * (1 + rel_tol)

    def as_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "lower": self.lower,
            "upper": self.upper,
            "formula_value": self.formula_value,
            "method": self.method,
        }


def _finite(value: float) -> float | str:
    return "inf" if math.isinf(value) else value


__all__ = ["EntropyEstimate", "Net", "NetRole", "Target", "TargetKind"]
