"""Taylor polynomials from central finite-difference stencils."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Generator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ...core.config import get_settings
from ...core.exceptions import DomainError
from .types import Oracle, TaylorModel

logger = logging.getLogger(__name__)

_MACHINE_EPS = float(np.finfo(float).eps)


@lru_cache(maxsize=None)
def _multi_indices(d: int, order: int) -> tuple[tuple[int, ...], ...]:
    indices: list[tuple[int, ...]] = []
    for total in range(order + 1):
        for combo in itertools.combinations_with_replacement(range(d), total):
            gamma = [0] * d
            for axis in combo:
                gamma[axis] += 1
            indices.append(tuple(gamma))
    return tuple(indices)


def multi_indices(d: int, order: int) -> np.ndarray:
    """All γ ∈ N₀^d with |γ| ≤ order, sorted by total degree; binom(d+order, order) rows."""

    if d < 1 or order < 0:
        msg = f"Need d >= 1 and order >= 0, got d={d}, order={order}"
        raise ValueError(msg)
    return np.array(_multi_indices(d, order), dtype=int).reshape(-1, d)


def multinomial_coefficient(gamma: tuple[int, ...] | np.ndarray) -> int:
    """|γ|! / γ!."""

    parts = [int(g) for g in gamma]
    return math.factorial(sum(parts)) // math.prod(math.factorial(g) for g in parts)


@lru_cache(maxsize=None)
def central_weights(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Offsets j and weights w with g^{(order)}(x) ≈ Σ w_j g(x + jh) / h^order to O(h²)."""

    if order == 0:
        return np.zeros(1, dtype=int), np.ones(1)
    reach = (order + 1) // 2
    offsets = np.arange(-reach, reach + 1)
    size = offsets.size
    vandermonde = np.vander(offsets.astype(float), size, increasing=True).T
    rhs = np.zeros(size)
    rhs[order] = math.factorial(order)
    weights = np.linalg.solve(vandermonde, rhs)
    weights[np.abs(weights) < 1e-13] = 0.0
    return offsets, weights


def step_size(order: int, fd_step: float | None = None) -> float:
    """max(fd_step, ε_mach^{1/(order+2)}), balancing truncation against rounding."""

    base = get_settings().fd_step if fd_step is None else fd_step
    return max(base, _MACHINE_EPS ** (1.0 / (order + 2)))


@dataclass(slots=True, eq=False)
class StencilPlan:
    """Query points around a center and, per multi-index, the rows and weights combining them."""

    center: np.ndarray
    order: int
    indices: np.ndarray
    points: np.ndarray
    terms: list[tuple[np.ndarray, np.ndarray]]
    reach: float

    @property
    def size(self) -> int:
        return int(self.points.shape[0])

    @property
    def stencil_factor(self) -> float:
        return self.size / self.indices.shape[0]


@lru_cache(maxsize=None)
def _stencil_pattern(
    d: int, order: int, fd_step: float
) -> tuple[np.ndarray, tuple[tuple[np.ndarray, np.ndarray], ...], float]:
    """Offsets (relative to the center) and per-γ combination rules; center-independent."""

    indices = multi_indices(d, order)
    rows: dict[tuple[float, ...], int] = {}
    offsets: list[np.ndarray] = []
    terms: list[tuple[np.ndarray, np.ndarray]] = []
    reach = 0.0
    for gamma in indices:
        total = int(gamma.sum())
        h = step_size(total, fd_step)
        axes = [axis for axis in range(d) if gamma[axis] > 0]
        per_axis = [central_weights(int(gamma[axis])) for axis in axes]
        term_rows: list[int] = []
        term_weights: list[float] = []
        for combo in itertools.product(*[range(offs.size) for offs, _ in per_axis]):
            offset = np.zeros(d)
            weight = 1.0
            for axis, (offs, wts), pick in zip(axes, per_axis, combo):
                offset[axis] = offs[pick] * h
                weight *= wts[pick]
            if weight == 0.0:
                continue
            key = tuple(offset.tolist())
            if key not in rows:
                rows[key] = len(offsets)
                offsets.append(offset)
                reach = max(reach, float(np.linalg.norm(offset)))
            term_rows.append(rows[key])
            term_weights.append(weight / h**total)
        factorial = math.prod(math.factorial(int(g)) for g in gamma)
        terms.append((np.array(term_rows, dtype=int), np.array(term_weights) / factorial))
    return np.vstack(offsets), tuple(terms), reach


def plan_stencil(center: np.ndarray, order: int, fd_step: float | None = None) -> StencilPlan:
    """Tensor-product central stencils for every D^γ with |γ| ≤ order, duplicates shared."""

    center = np.asarray(center, dtype=float).reshape(-1)
    step = get_settings().fd_step if fd_step is None else fd_step
    offsets, terms, reach = _stencil_pattern(center.size, order, float(step))
    return StencilPlan(
        center=center,
        order=order,
        indices=multi_indices(center.size, order),
        points=center + offsets,
        terms=list(terms),
        reach=reach,
    )


def stencil_size(d: int, order: int, fd_step: float | None = None) -> int:
    """Number of queries one Taylor model of this order costs."""

    return plan_stencil(np.zeros(d), order, fd_step).size


def stencil_reach(d: int, order: int, fd_step: float | None = None) -> float:
    """Largest Euclidean distance from the center to a stencil point."""

    return plan_stencil(np.zeros(d), order, fd_step).reach


def taylor_dialogue(
    center: np.ndarray, order: int, fd_step: float | None = None
) -> Generator[np.ndarray, float, TaylorModel]:
    """Yield the stencil points around ``center`` and return the estimated Taylor model."""

    plan = plan_stencil(center, order, fd_step)
    tol = get_settings().domain_tol
    if float(np.linalg.norm(plan.center)) + plan.reach > 1.0 + tol:
        msg = (
            f"Stencil of reach {plan.reach:.3g} around a center of norm "
            f"{np.linalg.norm(plan.center):.6g} exits the unit ball"
        )
        raise DomainError(msg)

    answers = np.empty(plan.size)
    for row, point in enumerate(plan.points):
        answers[row] = yield point
    coefficients = np.array([float(weights @ answers[rows]) for rows, weights in plan.terms])
    return TaylorModel(
        center=plan.center,
        order=order,
        indices=plan.indices,
        coefficients=coefficients,
        queries=plan.size,
    )


def taylor_coeffs_fd(
    f: Oracle, center: np.ndarray, order: int, fd_step: float | None = None
) -> TaylorModel:
    """Finite-difference estimate of c_γ = D^γ f(x⁰)/γ! for |γ| ≤ order."""

    dialogue = taylor_dialogue(center, order, fd_step)
    try:
        point = next(dialogue)
        while True:
            point = dialogue.send(float(f(point)))
    except StopIteration as stop:
        model: TaylorModel = stop.value
    logger.debug("Taylor model of order %d used %d queries", order, model.queries)
    return model


__all__ = [
    "StencilPlan",
    "central_weights",
    "multi_indices",
    "multinomial_coefficient",
    "plan_stencil",
    "stencil_reach",
    "stencil_size",
    "step_size",
    "taylor_coeffs_fd",
    "taylor_dialogue",
]
