"""Approximants, Taylor models and the adaptive sampler protocol."""

from __future__ import annotations

import hashlib
import math
from abc import ABC, abstractmethod
from collections.abc import Callable, Generator
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Protocol

import numpy as np

from ...core.config import get_settings
from ...core.exceptions import BudgetExceededError
from ..geometry.norms import as_points, ensure_in_domain

if TYPE_CHECKING:
    from ..classes.types import ClassSpec, RidgeFunction
    from .univariate import PiecewisePolynomial

Oracle = Callable[[np.ndarray], float]
Dialogue = Generator[np.ndarray, float, "Approximant"]

_EVAL_CHUNK = 4096


class ApproximantForm(Enum):
    """Structural form of a reconstruction."""

    PIECEWISE_CONSTANT = "piecewise-constant"
    PIECEWISE_TAYLOR = "piecewise-taylor"
    RECOVERED_RIDGE = "recovered-ridge"
    GLOBAL_TAYLOR = "global-taylor"


@dataclass(slots=True)
class Provenance:
    """Query points and the answers an approximant was built from."""

    points: np.ndarray
    values: np.ndarray

    @classmethod
    def empty(cls, d: int) -> Provenance:
        return cls(points=np.empty((0, d)), values=np.empty(0))

    @property
    def count(self) -> int:
        return int(self.values.size)

    def as_dict(self) -> dict[str, Any]:
        return {"points": self.points.tolist(), "values": self.values.tolist()}


class CellAssigner(Protocol):
    """Anything that maps points to cell indices (a cover or an anchored cover)."""

    def assign(self, points: np.ndarray) -> np.ndarray: ...


class Approximant(ABC):
    """Deterministic evaluator on the closed unit ball built by a sampler."""

    form: ApproximantForm

    def __init__(self, d: int) -> None:
        self.d = d
        self.provenance = Provenance.empty(d)

    @abstractmethod
    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Values at an (m, d) array of points already known to lie in the domain."""

    @abstractmethod
    def coefficients(self) -> list[np.ndarray]:
        """Arrays derived from the answers (the zero map sends zero answers to zeros here)."""

    def structure(self) -> list[np.ndarray]:
        """Arrays fixed by the sampler independent of the answers."""

        return []

    @property
    def ridge_direction(self) -> np.ndarray | None:
        return None

    def __call__(self, x: np.ndarray) -> np.ndarray | float:
        points = ensure_in_domain(as_points(np.atleast_1d(x), self.d), get_settings().domain_tol)
        values = np.empty(points.shape[0])
        for start in range(0, points.shape[0], _EVAL_CHUNK):
            values[start : start + _EVAL_CHUNK] = self.evaluate(points[start : start + _EVAL_CHUNK])
        single = np.ndim(x) <= 1 and np.size(x) == self.d
        return float(values[0]) if single else values

    @property
    def is_zero(self) -> bool:
        return all(not np.any(array) for array in self.coefficients())

    def fingerprint(self) -> str:
        """Hash of the form and every array that determines the evaluator."""

        digest = hashlib.sha256(self.form.value.encode("utf-8"))
        for array in [*self.structure(), *self.coefficients()]:
            # + 0.0 folds -0.0 into 0.0
            contiguous = np.ascontiguousarray(array, dtype=float) + 0.0
            digest.update(str(contiguous.shape).encode("utf-8"))
            digest.update(contiguous.tobytes())
        return digest.hexdigest()

    def attach(self, provenance: Provenance) -> None:
        self.provenance = provenance

    def as_dict(self) -> dict[str, Any]:
        return {"form": self.form.value, "d": self.d, "fingerprint": self.fingerprint()}


class PiecewiseConstantApproximant(Approximant):
    """Sf = Σ f(x_i) 1_{U_i} over the cells of a cover."""

    form = ApproximantForm.PIECEWISE_CONSTANT

    def __init__(self, cells: CellAssigner, anchors: np.ndarray, values: np.ndarray) -> None:
        super().__init__(anchors.shape[1])
        self.cells = cells
        self.anchors = np.asarray(anchors, dtype=float)
        self.values = np.asarray(values, dtype=float)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return self.values[self.cells.assign(points)]

    def coefficients(self) -> list[np.ndarray]:
        return [self.values]

    def structure(self) -> list[np.ndarray]:
        return [self.anchors]


@dataclass(slots=True, eq=False)
class TaylorModel:
    """T_{s,x⁰}f(x) = Σ_{|γ|≤s} c_γ (x − x⁰)^γ with c_γ = D^γ f(x⁰)/γ!."""

    center: np.ndarray
    order: int
    indices: np.ndarray
    coefficients: np.ndarray
    queries: int = 0

    def __post_init__(self) -> None:
        self.center = np.asarray(self.center, dtype=float).reshape(-1)
        self.indices = np.asarray(self.indices, dtype=int).reshape(-1, self.center.size)
        self.coefficients = np.asarray(self.coefficients, dtype=float).reshape(-1)
        expected = math.comb(self.center.size + self.order, self.order)
        if self.indices.shape[0] != expected or self.coefficients.size != expected:
            d = self.center.size
            msg = f"Taylor model of order {self.order} in d={d} needs {expected} terms"
            raise ValueError(msg)

    @property
    def d(self) -> int:
        return int(self.center.size)

    @property
    def size(self) -> int:
        return int(self.coefficients.size)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return evaluate_monomials(points - self.center, self.indices, self.coefficients[None, :])

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return self.evaluate(as_points(np.atleast_1d(points), self.d))

    def coefficient(self, gamma: tuple[int, ...]) -> float:
        match = np.all(self.indices == np.asarray(gamma), axis=1)
        if not np.any(match):
            msg = f"Multi-index {gamma} not in model of order {self.order}"
            raise KeyError(msg)
        return float(self.coefficients[int(np.argmax(match))])

    def derivative(self, gamma: tuple[int, ...]) -> float:
        """D^γ f(x⁰) recovered from the stored coefficient."""

        return self.coefficient(gamma) * math.prod(math.factorial(g) for g in gamma)

    @classmethod
    def from_ridge(cls, f: RidgeFunction, center: np.ndarray, order: int) -> TaylorModel:
        """Exact-derivative model: D^γ f(x⁰) = g^{(|γ|)}(a·x⁰) a^γ."""

        from .taylor import multi_indices

        center = np.asarray(center, dtype=float).reshape(-1)
        indices = multi_indices(f.d, order)
        t = float(np.clip(center @ f.direction, -1.0, 1.0))
        derivs = np.array([f.profile.deriv(j, t) for j in range(order + 1)])
        totals = indices.sum(axis=1)
        powers = np.prod(f.direction[None, :] ** indices, axis=1)
        factorials = np.prod([[math.factorial(int(g)) for g in row] for row in indices], axis=1)
        coefficients = derivs[totals] * powers / factorials
        return cls(center=center, order=order, indices=indices, coefficients=coefficients)

    def as_dict(self) -> dict[str, Any]:
        return {
            "center": self.center.tolist(),
            "order": self.order,
            "terms": self.size,
            "queries": self.queries,
        }


def evaluate_monomials(
    offsets: np.ndarray, indices: np.ndarray, coefficients: np.ndarray
) -> np.ndarray:
    """Σ_γ c_γ offset^γ row-wise; ``coefficients`` is (1, M) or (m, M)."""

    result = np.empty(offsets.shape[0])
    for start in range(0, offsets.shape[0], _EVAL_CHUNK):
        block = offsets[start : start + _EVAL_CHUNK]
        monomials = np.prod(block[:, None, :] ** indices[None, :, :], axis=2)
        coeffs = coefficients
        if coefficients.shape[0] != 1:
            coeffs = coefficients[start : start + _EVAL_CHUNK]
        result[start : start + _EVAL_CHUNK] = np.sum(monomials * coeffs, axis=1)
    return result


class PiecewiseTaylorApproximant(Approximant):
    """On each cell U_i the Taylor polynomial of order s at the cell's stencil center."""

    form = ApproximantForm.PIECEWISE_TAYLOR

    def __init__(self, cells: CellAssigner, models: list[TaylorModel]) -> None:
        if not models:
            msg = "Piecewise Taylor approximant needs at least one model"
            raise ValueError(msg)
        super().__init__(models[0].d)
        self.cells = cells
        self.indices = models[0].indices
        self.centers = np.vstack([model.center for model in models])
        self.table = np.vstack([model.coefficients for model in models])

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        cells = self.cells.assign(points)
        return evaluate_monomials(points - self.centers[cells], self.indices, self.table[cells])

    def coefficients(self) -> list[np.ndarray]:
        return [self.table]

    def structure(self) -> list[np.ndarray]:
        return [self.centers]


class TaylorApproximant(Approximant):
    """A single global Taylor polynomial."""

    form = ApproximantForm.GLOBAL_TAYLOR

    def __init__(self, model: TaylorModel) -> None:
        super().__init__(model.d)
        self.model = model

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return self.model.evaluate(points)

    def coefficients(self) -> list[np.ndarray]:
        return [self.model.coefficients]

    def structure(self) -> list[np.ndarray]:
        return [self.model.center]


class RidgeApproximant(Approximant):
    """f̂(x) = ĝ(â·x) with a recovered unit direction â and a univariate interpolant ĝ."""

    form = ApproximantForm.RECOVERED_RIDGE

    def __init__(self, direction: np.ndarray, profile: PiecewisePolynomial) -> None:
        direction = np.asarray(direction, dtype=float).reshape(-1)
        super().__init__(direction.size)
        self.direction = direction
        self.profile = profile

    @property
    def ridge_direction(self) -> np.ndarray:
        return self.direction

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(self.profile(np.clip(points @ self.direction, -1.0, 1.0)))

    def coefficients(self) -> list[np.ndarray]:
        return [self.profile.values]

    def structure(self) -> list[np.ndarray]:
        return [self.direction, self.profile.nodes]


@dataclass(frozen=True, slots=True)
class RecoveryParams:
    """Parameters of first-order direction recovery: δ = εκ/(2+ε) and h = (δ/2)^{1/β}."""

    eps: float
    kappa: float
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not self.eps > 0:
            msg = f"Direction accuracy must be positive, got eps={self.eps}"
            raise ValueError(msg)
        if not 0 < self.kappa <= 1:
            msg = f"Derivative floor must lie in (0, 1], got kappa={self.kappa}"
            raise ValueError(msg)
        if not 0 < self.beta <= 1:
            msg = f"Hölder order must lie in (0, 1], got beta={self.beta}"
            raise ValueError(msg)

    @property
    def delta(self) -> float:
        return self.eps * self.kappa / (2.0 + self.eps)

    @property
    def h(self) -> float:
        return (self.delta / 2.0) ** (1.0 / self.beta)

    def as_dict(self) -> dict[str, float]:
        return {
            "eps": self.eps,
            "kappa": self.kappa,
            "beta": self.beta,
            "delta": self.delta,
            "h": self.h,
        }


class AdaptiveSampler(ABC):
    """An algorithm that queries at most ``budget`` function values and returns an approximant.

    ``dialogue()`` is a generator: it yields query points, receives the answers through
    ``send`` and returns the approximant when done.
    """

    name: str = "sampler"

    def __init__(self, spec: ClassSpec, budget: int) -> None:
        self.spec = spec
        self.budget = budget

    @property
    def d(self) -> int:
        return self.spec.d

    @abstractmethod
    def dialogue(self) -> Dialogue:
        """Run one query/answer dialogue."""

    def certified_bound(self) -> float | None:
        """Worst-case error guarantee over the class, when one is known."""

        return None

    def as_dict(self) -> dict[str, Any]:
        return {
            "sampler": self.name,
            "budget": self.budget,
            "spec": self.spec.as_dict(),
            "certified_bound": self.certified_bound(),
        }


@dataclass(slots=True)
class SamplerRun:
    """Outcome of a dialogue: the approximant and the queries that produced it."""

    sampler: str
    budget: int
    approximant: Approximant
    points: np.ndarray
    values: np.ndarray
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def queries(self) -> int:
        return int(self.values.size)

    def as_dict(self) -> dict[str, Any]:
        return {
            "sampler": self.sampler,
            "budget": self.budget,
            "queries_used": self.queries,
            "approximant": self.approximant.as_dict(),
            **self.metadata,
        }


def run_sampler(sampler: AdaptiveSampler, oracle: Oracle) -> SamplerRun:
    """Drive the sampler's dialogue against ``oracle`` enforcing the budget and the domain."""

    tol = get_settings().domain_tol
    dialogue = sampler.dialogue()
    points: list[np.ndarray] = []
    values: list[float] = []
    try:
        query = next(dialogue)
        while True:
            point = np.asarray(query, dtype=float).reshape(-1)
            if point.size != sampler.d:
                msg = f"Sampler {sampler.name} queried a point of dimension {point.size}"
                raise ValueError(msg)
            ensure_in_domain(point[None, :], tol)
            if len(points) >= sampler.budget:
                msg = f"Sampler {sampler.name} exceeded its budget of {sampler.budget} queries"
                raise BudgetExceededError(msg)
            answer = float(oracle(point))
            points.append(point)
            values.append(answer)
            query = dialogue.send(answer)
    except StopIteration as stop:
        approximant: Approximant = stop.value

    point_array = np.vstack(points) if points else np.empty((0, sampler.d))
    value_array = np.asarray(values, dtype=float)
    approximant.attach(Provenance(points=point_array, values=value_array))
    return SamplerRun(
        sampler=sampler.name,
        budget=sampler.budget,
        approximant=approximant,
        points=point_array,
        values=value_array,
    )


def zero_oracle(point: np.ndarray) -> float:
    """The oracle of the zero function."""

    return 0.0


def as_oracle(f: Callable[[np.ndarray], Any]) -> Oracle:
    """Wrap an evaluable (ridge function, approximant) as a single-point oracle."""

    def oracle(point: np.ndarray) -> float:
        return float(np.asarray(f(np.asarray(point, dtype=float).reshape(1, -1))).reshape(-1)[0])

    return oracle


__all__ = [
    "AdaptiveSampler",
    "Approximant",
    "ApproximantForm",
    "CellAssigner",
    "Dialogue",
    "Oracle",
    "PiecewiseConstantApproximant",
    "PiecewiseTaylorApproximant",
    "Provenance",
    "RecoveryParams",
    "RidgeApproximant",
    "SamplerRun",
    "TaylorApproximant",
    "TaylorModel",
    "as_oracle",
    "evaluate_monomials",
    "run_sampler",
    "zero_oracle",
]
