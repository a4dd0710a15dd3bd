"""Piecewise polynomial interpolation of a univariate profile on [−1, 1]."""

from __future__ import annotations

import math
from collections.abc import Callable, Generator
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import numpy as np

from ..classes.types import strict_floor


@lru_cache(maxsize=None)
def lebesgue_constant(degree: int, grid_size: int = 20_001) -> float:
    """Λ_s of degree-s interpolation at s+1 equispaced nodes."""

    if degree == 0:
        return 1.0
    nodes = np.linspace(0.0, 1.0, degree + 1)
    grid = np.linspace(0.0, 1.0, grid_size)
    return float(np.max(np.sum(np.abs(_lagrange_basis(grid[:, None], nodes[None, :])), axis=1)))


def _lagrange_basis(t: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """L_j(t) for each row of ``t`` (shape (m, 1)) against its row of ``nodes`` (shape (·, s+1))."""

    count = nodes.shape[-1]
    basis = np.ones(np.broadcast_shapes(t.shape, nodes.shape))
    for j in range(count):
        for i in range(count):
            if i != j:
                basis[..., j] *= (t[..., 0] - nodes[..., i]) / (nodes[..., j] - nodes[..., i])
    return basis


@dataclass(slots=True, eq=False)
class PiecewisePolynomial:
    """Degree-s interpolant of values at k equispaced nodes of [−1, 1].

    Consecutive panels span s grid intervals; the last panel is shifted left to end at +1 and may
    overlap its neighbour. Degree 0 means nearest-node (piecewise constant) values.
    """

    nodes: np.ndarray
    values: np.ndarray
    degree: int

    def __post_init__(self) -> None:
        self.nodes = np.asarray(self.nodes, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.nodes.size != self.values.size or self.nodes.size < 1:
            msg = "Interpolation needs matching, non-empty nodes and values"
            raise ValueError(msg)
        if self.nodes.size < self.degree + 1:
            msg = f"Degree {self.degree} interpolation needs at least {self.degree + 1} nodes"
            raise ValueError(msg)

    @property
    def k(self) -> int:
        return int(self.nodes.size)

    @property
    def spacing(self) -> float:
        return 2.0 / (self.k - 1) if self.k > 1 else 2.0

    @property
    def panels(self) -> int:
        if self.degree == 0:
            return self.k
        return math.ceil((self.k - 1) / self.degree)

    def __call__(self, t: np.ndarray | float) -> np.ndarray | float:
        original = np.asarray(t, dtype=float)
        points = np.clip(np.atleast_1d(original).reshape(-1), -1.0, 1.0)
        if self.k == 1:
            result = np.full(points.shape, self.values[0])
        elif self.degree == 0:
            nearest = np.rint((points + 1.0) / self.spacing).astype(int)
            result = self.values[np.clip(nearest, 0, self.k - 1)]
        else:
            width = self.degree * self.spacing
            panel = np.minimum(np.floor((points + 1.0) / width).astype(int), self.panels - 1)
            first = np.minimum(panel * self.degree, self.k - 1 - self.degree)
            columns = first[:, None] + np.arange(self.degree + 1)[None, :]
            basis = _lagrange_basis(points[:, None], self.nodes[columns])
            result = np.sum(basis * self.values[columns], axis=1)
        if original.ndim == 0:
            return float(result[0])
        return result.reshape(original.shape)

    def error_bound(self, alpha: float) -> float:
        return interpolation_error_bound(self.k, self.degree, alpha)

    def as_dict(self) -> dict[str, Any]:
        return {"k": self.k, "degree": self.degree, "panels": self.panels}


def interpolation_error_bound(k: int, degree: int, alpha: float) -> float:
    """Worst-case sup error of the k-node interpolant for profiles with ‖g‖_{Lip_α} ≤ 1.

    Degree s ≥ 1: (1 + Λ_s)(2/s!)(s/(k−1))^α, from the Taylor remainder at each panel midpoint.
    Degree 0: 2 (1/(k−1))^α, the nearest-node distance bound.
    """

    if k == 1:
        return 2.0
    if degree == 0:
        return 2.0 * min(1.0, 1.0 / (k - 1)) ** min(alpha, 1.0)
    half_width = degree / (k - 1)
    return (1.0 + lebesgue_constant(degree)) * (2.0 / math.factorial(degree)) * half_width**alpha


def uniform_nodes(k: int) -> np.ndarray:
    """k equispaced nodes of [−1, 1] (the midpoint for k = 1)."""

    if k < 1:
        msg = f"Need at least one node, got k={k}"
        raise ValueError(msg)
    if k == 1:
        return np.zeros(1)
    nodes = np.linspace(-1.0, 1.0, k)
    if k % 2 == 1:
        nodes[k // 2] = 0.0
    return nodes


def univariate_dialogue(
    k: int,
    degree: int,
    embed: Callable[[float], np.ndarray],
    known: dict[float, float] | None = None,
) -> Generator[np.ndarray, float, PiecewisePolynomial]:
    """Yield ``embed(t)`` for each node t not already in ``known`` and return the interpolant."""

    nodes = uniform_nodes(k)
    known = known or {}
    values = np.empty(k)
    for index, node in enumerate(nodes):
        if float(node) in known:
            values[index] = known[float(node)]
        else:
            values[index] = yield embed(float(node))
    return PiecewisePolynomial(nodes=nodes, values=values, degree=degree)


def univariate_sampler(
    g: Callable[[float], float], k: int, degree: int | None = None, *, alpha: float | None = None
) -> PiecewisePolynomial:
    """Interpolate g from k equispaced samples with piecewise polynomials of degree s.

    ``degree`` defaults to s = ⌈α⌉ − 1 when ``alpha`` is given.
    """

    if degree is None:
        if alpha is None:
            msg = "Either degree or alpha is required"
            raise ValueError(msg)
        degree = strict_floor(alpha)
    if k < degree + 1:
        msg = f"Degree {degree} interpolation needs k >= {degree + 1} samples, got k={k}"
        raise ValueError(msg)

    dialogue = univariate_dialogue(k, degree, lambda t: np.array([t]))
    try:
        point = next(dialogue)
        while True:
            point = dialogue.send(float(g(float(point[0]))))
    except StopIteration as stop:
        return stop.value


__all__ = [
    "PiecewisePolynomial",
    "interpolation_error_bound",
    "lebesgue_constant",
    "uniform_nodes",
    "univariate_dialogue",
    "univariate_sampler",
]
