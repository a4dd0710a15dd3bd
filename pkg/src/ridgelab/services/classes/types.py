"""Domain types for ridge function classes."""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ...core.config import get_settings
from ..geometry.norms import as_points, ensure_in_domain, p_norm

DerivativeFn = Callable[[int, np.ndarray], np.ndarray]

# Unit-norm directions are accepted up to this slack in the (quasi-)norm.
DIRECTION_TOL = 1e-12


def strict_floor(alpha: float) -> int:
    """Largest integer strictly less than ``alpha``."""

    return int(math.ceil(alpha)) - 1


@dataclass(frozen=True, slots=True)
class ClassSpec:
    """Parameters of the class R^{α,p,κ} on the Euclidean unit ball of R^d."""

    alpha: float
    p: float = 2.0
    kappa: float = 0.0
    d: int = 1

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            msg = f"Smoothness must be positive, got alpha={self.alpha}"
            raise ValueError(msg)
        if not 0 < self.p <= 2:
            msg = f"Direction exponent must lie in (0, 2], got p={self.p}"
            raise ValueError(msg)
        if not 0 <= self.kappa <= 1:
            msg = f"Derivative floor must lie in [0, 1], got kappa={self.kappa}"
            raise ValueError(msg)
        if self.kappa > 0 and self.alpha <= 1:
            msg = "A positive derivative floor requires alpha > 1"
            raise ValueError(msg)
        if self.d < 1:
            msg = f"Dimension must be at least 1, got d={self.d}"
            raise ValueError(msg)

    @property
    def is_smooth(self) -> bool:
        """True for the C^∞ class (alpha = ∞)."""

        return math.isinf(self.alpha)

    @property
    def s(self) -> int | None:
        return None if self.is_smooth else strict_floor(self.alpha)

    @property
    def beta(self) -> float | None:
        if self.is_smooth:
            return None
        return self.alpha - strict_floor(self.alpha)

    @property
    def p_prime(self) -> float:
        """Dual exponent of max{p, 1}."""

        return math.inf if self.p <= 1 else self.p / (self.p - 1.0)

    def with_dimension(self, d: int) -> ClassSpec:
        return dataclasses.replace(self, d=d)

    def as_dict(self) -> dict[str, object]:
        return {
            "alpha": _jsonable(self.alpha),
            "p": self.p,
            "kappa": self.kappa,
            "d": self.d,
            "s": self.s,
            "beta": self.beta,
            "p_prime": _jsonable(self.p_prime),
        }


@dataclass(frozen=True, slots=True, eq=False)
class Profile:
    """A univariate function on [−1, 1] with closed-form derivatives and a norm certificate.

    ``derivative(j, t)`` returns g^{(j)}(t) for 0 ≤ j ≤ ``max_order`` (unbounded when ``None``).
    ``lip_bound`` is an upper bound on ‖g‖_{Lip_α[−1,1]} (the C^∞ norm when α = ∞) and
    ``normalizer`` the constant the raw catalog function was multiplied by.
    """

    name: str
    alpha: float
    derivative: DerivativeFn
    lip_bound: float
    normalizer: float = 1.0
    g0_deriv: float | None = None
    max_order: int | None = None
    params: Mapping[str, Any] = field(default_factory=dict)

    def value(self, t: np.ndarray | float) -> np.ndarray | float:
        return self.deriv(0, t)

    def __call__(self, t: np.ndarray | float) -> np.ndarray | float:
        return self.deriv(0, t)

    def deriv(self, order: int, t: np.ndarray | float) -> np.ndarray | float:
        if order < 0:
            msg = f"Derivative order must be non-negative, got {order}"
            raise ValueError(msg)
        if self.max_order is not None and order > self.max_order:
            msg = f"Profile {self.name} has no derivative evaluator of order {order}"
            raise ValueError(msg)
        array = np.asarray(t, dtype=float)
        result = np.asarray(self.derivative(order, array), dtype=float)
        if array.ndim == 0:
            return float(result)
        return np.broadcast_to(result, array.shape).copy()

    def scaled(self, factor: float, name: str | None = None) -> Profile:
        base = self.derivative
        return dataclasses.replace(
            self,
            name=name or f"{factor:g}*{self.name}",
            derivative=lambda order, t: factor * base(order, t),
            lip_bound=abs(factor) * self.lip_bound,
            normalizer=factor * self.normalizer,
            g0_deriv=None if self.g0_deriv is None else factor * self.g0_deriv,
        )

    def negated(self) -> Profile:
        return self.scaled(-1.0, name=f"-{self.name}")

    def plus(self, other: Profile, weight: float = 1.0, name: str | None = None) -> Profile:
        """Return g + weight·other; the norm certificate is the triangle inequality."""

        first, second = self.derivative, other.derivative
        orders = [order for order in (self.max_order, other.max_order) if order is not None]
        g0 = None
        if self.g0_deriv is not None and other.g0_deriv is not None:
            g0 = self.g0_deriv + weight * other.g0_deriv
        return Profile(
            name=name or f"{self.name}+{weight:g}*{other.name}",
            alpha=min(self.alpha, other.alpha),
            derivative=lambda order, t: first(order, t) + weight * second(order, t),
            lip_bound=self.lip_bound + abs(weight) * other.lip_bound,
            normalizer=1.0,
            g0_deriv=g0,
            max_order=min(orders) if orders else None,
            params={"terms": [self.name, other.name], "weight": weight},
        )

    def as_dict(self) -> dict[str, object]:
        return {
            "name": self.name,
            "alpha": _jsonable(self.alpha),
            "lip_bound": self.lip_bound,
            "normalizer": self.normalizer,
            "g0_deriv": self.g0_deriv,
            "params": {key: _jsonable(value) for key, value in self.params.items()},
        }


@dataclass(frozen=True, slots=True, eq=False)
class RidgeFunction:
    """f(x) = g(a·x) on the closed Euclidean unit ball."""

    direction: np.ndarray
    profile: Profile
    p: float = 2.0

    def __post_init__(self) -> None:
        direction = np.array(self.direction, dtype=float).reshape(-1)
        if direction.size == 0:
            msg = "Ridge direction must be non-empty"
            raise ValueError(msg)
        size = p_norm(direction, self.p)
        if size > 1.0 + DIRECTION_TOL:
            msg = f"Ridge direction has l{self.p:g} norm {size:.6g} > 1"
            raise ValueError(msg)
        direction.setflags(write=False)
        object.__setattr__(self, "direction", direction)

    @property
    def d(self) -> int:
        return int(self.direction.size)

    @property
    def ridge_direction(self) -> np.ndarray:
        return self.direction

    def inner(self, x: np.ndarray) -> np.ndarray:
        """a·x for each row of ``x`` after the domain check, clipped to [−1, 1]."""

        points = ensure_in_domain(as_points(np.atleast_1d(x), self.d), get_settings().domain_tol)
        return np.clip(points @ self.direction, -1.0, 1.0)

    def __call__(self, x: np.ndarray) -> np.ndarray | float:
        values = np.asarray(self.profile.value(self.inner(x)))
        return float(values[0]) if _is_single(x, self.d) else values

    def partial(self, order: int, x: np.ndarray) -> np.ndarray:
        """g^{(order)}(a·x); D^γ f(x) equals this times a^γ for |γ| = order."""

        return np.asarray(self.profile.deriv(order, self.inner(x)))

    def negated(self) -> RidgeFunction:
        return RidgeFunction(self.direction, self.profile.negated(), self.p)

    def scaled(self, factor: float) -> RidgeFunction:
        return RidgeFunction(self.direction, self.profile.scaled(factor), self.p)

    def as_dict(self) -> dict[str, object]:
        return {
            "direction": self.direction.tolist(),
            "p": self.p,
            "profile": self.profile.as_dict(),
        }


def ridge_eval(f: RidgeFunction, x: np.ndarray) -> float:
    """Evaluate f at a single point of the closed unit ball."""

    point = np.asarray(x, dtype=float).reshape(-1)
    return float(np.asarray(f(point.reshape(1, -1)))[0])


def _is_single(x: np.ndarray, d: int) -> bool:
    return np.ndim(x) <= 1 and np.size(x) == d


def _jsonable(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


__all__ = ["ClassSpec", "DerivativeFn", "Profile", "RidgeFunction", "ridge_eval", "strict_floor"]
