"""Direction sets and lower-bound certificates."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
from scipy.spatial.distance import pdist

from ...utils.seeding import spawn_rng, stable_key
from ..geometry.nets import sparse_sphere_packing
from ..geometry.norms import p_norm, sample_sphere

_NORM_TOL = 1e-12


class DirectionKind(Enum):
    """How a direction set was produced."""

    CANONICAL = "canonical"
    SPARSE_SPHERE = "sparse"
    FULL_SPHERE = "sphere"
    EXPLICIT = "explicit"


@dataclass(slots=True, eq=False)
class DirectionSet:
    """A finite set M ⊂ B̄_p^d \\ {0} of candidate ridge directions.

    Members are kept in a fixed order (e₁, −e₁, e₂, −e₂, … for the canonical set), which makes
    every selection among them deterministic.
    """

    kind: DirectionKind
    members: np.ndarray
    p: float = 2.0
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        members = np.asarray(self.members, dtype=float)
        if members.ndim != 2 or members.shape[0] == 0:
            msg = "A direction set needs at least one direction"
            raise ValueError(msg)
        norms = np.asarray(p_norm(members, self.p, axis=1))
        if np.any(norms == 0.0):
            msg = "Direction sets may not contain the zero vector"
            raise ValueError(msg)
        if np.any(norms > 1.0 + _NORM_TOL):
            msg = f"Directions must lie in the closed l{self.p:g} unit ball"
            raise ValueError(msg)
        self.members = members

    @property
    def size(self) -> int:
        return int(self.members.shape[0])

    @property
    def d(self) -> int:
        return int(self.members.shape[1])

    def __len__(self) -> int:
        return self.size

    def psi(self) -> np.ndarray:
        """Ψ(a) = a/‖a‖₂ for every member."""

        return self.members / np.linalg.norm(self.members, axis=1, keepdims=True)

    def separation(self) -> float:
        """Smallest Euclidean distance between two images Ψ(a)."""

        if self.size < 2:
            return math.inf
        return float(np.min(pdist(self.psi())))

    @classmethod
    def canonical(cls, d: int, p: float = 2.0) -> DirectionSet:
        members = np.zeros((2 * d, d))
        for axis in range(d):
            members[2 * axis, axis] = 1.0
            members[2 * axis + 1, axis] = -1.0
        return cls(DirectionKind.CANONICAL, members, p, {"cardinality": 2 * d})

    @classmethod
    def sparse_sphere(
        cls, d: int, m: int, p: float = 2.0, *, seed: int = 0, budget: int | None = None
    ) -> DirectionSet:
        """Pre-images on the ℓ_p sphere of a packing of m-sparse Euclidean unit vectors."""

        net = sparse_sphere_packing(d, m, p, budget=budget, seed=seed)
        members = net.centers * math.sqrt(m) * m ** (-1.0 / p)
        metadata = {key: net.metadata[key] for key in ("target_size", "achieved", "shortfall")}
        metadata.update({"m": m, "cardinality": net.size})
        return cls(DirectionKind.SPARSE_SPHERE, members, p, metadata)

    @classmethod
    def full_sphere(cls, d: int, count: int, p: float = 2.0, *, seed: int = 0) -> DirectionSet:
        rng = spawn_rng(seed, stable_key("direction-sphere"))
        members = sample_sphere(rng, count, d, p)
        return cls(DirectionKind.FULL_SPHERE, members, p, {"cardinality": count})

    @classmethod
    def explicit(cls, members: np.ndarray, p: float = 2.0) -> DirectionSet:
        members = np.atleast_2d(np.asarray(members, dtype=float))
        return cls(DirectionKind.EXPLICIT, members, p, {"cardinality": members.shape[0]})

    @classmethod
    def parse(cls, text: str, d: int, p: float = 2.0, *, seed: int = 0) -> DirectionSet:
        """Build a set from ``canonical``, ``sparse:m``, ``sphere:count`` or ``explicit:path``."""

        normalized = text.strip()
        name, _, argument = normalized.partition(":")
        name = name.strip().lower()
        if name == "canonical":
            return cls.canonical(d, p)
        if name == "sparse":
            return cls.sparse_sphere(d, int(argument), p, seed=seed)
        if name == "sphere":
            return cls.full_sphere(d, int(argument), p, seed=seed)
        if name == "explicit":
            path = Path(argument)
            if not path.exists():
                msg = f"Direction file not found: {path}"
                raise ValueError(msg)
            members = np.asarray(json.loads(path.read_text(encoding="utf-8")), dtype=float)
            directions = cls.explicit(members, p)
            if directions.d != d:
                msg = f"Directions in {path} have dimension {directions.d}, expected {d}"
                raise ValueError(msg)
            return directions
        msg = f"Unsupported direction set '{text}'"
        raise ValueError(msg)

    def as_dict(self) -> dict[str, Any]:
        separation = self.separation()
        return {
            "kind": self.kind.value,
            "d": self.d,
            "p": self.p,
            "size": self.size,
            "separation": None if math.isinf(separation) else separation,
            **self.metadata,
        }


class CertificateStatus(Enum):
    PASSED = "passed"
    FAILED = "failed"
    INCONCLUSIVE = "inconclusive"


@dataclass(slots=True)
class Certificate:
    """Result of running a sampler against a fooling pair ±f."""

    status: CertificateStatus
    sampler: str
    budget: int
    eps: float
    alpha: float
    p: float
    d: int
    queries: int
    floor: float | None = None
    achieved: float | None = None
    tolerance: float = 0.0
    direction: list[float] | None = None
    fingerprints: tuple[str, str] | None = None
    identical_outputs: bool | None = None
    query_values_zero: bool | None = None
    reason: str | None = None

    @property
    def passed(self) -> bool:
        return self.status is CertificateStatus.PASSED

    def as_dict(self) -> dict[str, Any]:
        return {
            "status": self.status.value,
            "sampler": self.sampler,
            "budget": self.budget,
            "eps": self.eps,
            "alpha": self.alpha,
            "p": self.p,
            "d": self.d,
            "queries": self.queries,
            "floor": self.floor,
            "achieved": self.achieved,
            "tolerance": self.tolerance,
            "direction": self.direction,
            "fingerprints": list(self.fingerprints) if self.fingerprints else None,
            "identical_outputs": self.identical_outputs,
            "query_values_zero": self.query_values_zero,
            "reason": self.reason,
        }


__all__ = ["Certificate", "CertificateStatus", "DirectionKind", "DirectionSet"]
