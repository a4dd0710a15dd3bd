"""Catalog of profiles with closed-form derivatives and certified norm bounds."""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Callable, Sequence
from enum import Enum
from functools import lru_cache
from typing import Any

import numpy as np

from .bump import bump
from .membership import SMOOTH_ORDERS, seminorm_estimate
from .types import ClassSpec, Profile, strict_floor

# Interval I = [π/4 − 1/5, π/4 + 1/5] ⊂ (0, 1) carrying the bump perturbations of sin.
INTERVAL_LEFT = math.pi / 4.0 - 0.2
INTERVAL = (INTERVAL_LEFT, INTERVAL_LEFT + 0.4)
# Largest value of any derivative of sin on I.
GAMMA = math.cos(INTERVAL_LEFT)

_SUP_GRID = np.linspace(-1.0, 1.0, 20_001)


class ProfileKind(Enum):
    """Catalog profile kinds; the flag marks kinds admitted to the C^∞ class."""

    LINEAR = ("linear", True)
    SINE = ("sine", True)
    EXP = ("exp", True)
    MONOMIAL = ("monomial", True)
    SINE_CUBIC = ("sine_cubic", True)
    CONSTANT = ("constant", True)
    ZERO = ("zero", True)
    BUMP = ("bump", False)
    PSI = ("psi", False)
    SINE_PLUS_BUMPS = ("sine_plus_bumps", False)
    FOOLING = ("fooling", False)

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def smooth(self) -> bool:
        """Return whether the kind may be used with alpha = ∞."""

        return self.value[1]

    @classmethod
    def parse(cls, name: str) -> ProfileKind:
        normalized = name.strip().lower().replace("-", "_")
        for kind in cls:
            if kind.label == normalized:
                return kind
        msg = f"Unsupported profile kind '{name}'"
        raise ValueError(msg)


def certificate(sups: Sequence[float], alpha: float) -> float:
    """Norm bound max{M_0..M_s, M_{s+1}/2} from derivative sups (sup M_j for α = ∞)."""

    if math.isinf(alpha):
        return max(sups)
    s = strict_floor(alpha)
    if len(sups) < s + 2:
        msg = f"Certificate for alpha={alpha} needs {s + 2} derivative bounds"
        raise ValueError(msg)
    return max(max(sups[: s + 1]), sups[s + 1] / 2.0)


def _derivative_sups(
    derivative: Callable[[int, np.ndarray], np.ndarray], count: int
) -> list[float]:
    return [float(np.max(np.abs(derivative(j, _SUP_GRID)))) for j in range(count)]


def _certified_profile(
    name: str,
    spec: ClassSpec,
    derivative: Callable[[int, np.ndarray], np.ndarray],
    *,
    g0: float,
    params: dict[str, Any] | None = None,
) -> Profile:
    """Profile rescaled by 1/bound when its analytic certificate exceeds 1."""

    count = SMOOTH_ORDERS + 1 if spec.is_smooth else int(spec.s) + 2  # type: ignore[arg-type]
    bound = certificate(_derivative_sups(derivative, count), spec.alpha)
    normalizer = 1.0 if bound <= 1.0 else 1.0 / bound
    return Profile(
        name=name,
        alpha=spec.alpha,
        derivative=lambda order, t: normalizer * derivative(order, t),
        lip_bound=bound * normalizer,
        normalizer=normalizer,
        g0_deriv=normalizer * g0,
        params=params or {},
    )


def _sine_derivative(order: int, t: np.ndarray) -> np.ndarray:
    return np.sin(t + order * math.pi / 2.0)


def _linear_derivative(order: int, t: np.ndarray) -> np.ndarray:
    if order == 0:
        return np.array(t, dtype=float)
    return np.full_like(t, 1.0 if order == 1 else 0.0, dtype=float)


def _monomial_derivative(power: int) -> Callable[[int, np.ndarray], np.ndarray]:
    def derivative(order: int, t: np.ndarray) -> np.ndarray:
        if order > power:
            return np.zeros_like(t, dtype=float)
        factor = math.factorial(power) / math.factorial(power - order)
        return factor * np.asarray(t, dtype=float) ** (power - order)

    return derivative


def _cubic_part(order: int, t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if order == 0:
        return t**3 / 6.0
    if order == 1:
        return t**2 / 2.0
    if order == 2:
        return t
    if order == 3:
        return np.ones_like(t)
    return np.zeros_like(t)


def _falling_factorial(x: float, order: int) -> float:
    return math.prod(x - i for i in range(order))


def _positive_power_derivative(
    alpha: float, kink: float, scale: float
) -> Callable[[int, np.ndarray], np.ndarray]:
    def derivative(order: int, t: np.ndarray) -> np.ndarray:
        shifted = np.maximum(np.asarray(t, dtype=float) - kink, 0.0)
        return scale * _falling_factorial(alpha, order) * shifted ** (alpha - order)

    return derivative


@lru_cache(maxsize=None)
def fooling_normalizer(alpha: float, grid_size: int | None = None) -> float:
    """θ_α = 1 / ‖t₊^α‖_{Lip_α[−1,1]} by dense-grid estimation, cached per α."""

    _require_finite(alpha, "fooling")
    raw = Profile(
        name="positive-power",
        alpha=alpha,
        derivative=_positive_power_derivative(alpha, 0.0, 1.0),
        lip_bound=math.inf,
        max_order=strict_floor(alpha),
    )
    return 1.0 / seminorm_estimate(raw, grid_size)


@lru_cache(maxsize=None)
def bump_norm(alpha: float, grid_size: int | None = None) -> float:
    """‖φ‖_{Lip_α} by dense-grid estimation, cached per α."""

    _require_finite(alpha, "bump")
    raw = Profile(
        name="phi", alpha=alpha, derivative=lambda order, t: bump(t, order), lip_bound=math.inf
    )
    return seminorm_estimate(raw, grid_size)


def bump_scale(alpha: float) -> float:
    """c_α = 1 / (5^α ‖φ‖_{Lip_α})."""

    return 1.0 / (5.0**alpha * bump_norm(alpha))


def psi_profile(k: int, b: float, alpha: float) -> Profile:
    """ψ_{k,b}(t) = c_α φ(5k(t − b)) / k^α, supported on |t − b| < 1/(5k)."""

    if k < 1:
        msg = f"Bump frequency must be at least 1, got k={k}"
        raise ValueError(msg)
    scale = bump_scale(alpha)
    width = 5.0 * k

    def derivative(order: int, t: np.ndarray) -> np.ndarray:
        return scale * width**order * bump(width * (np.asarray(t) - b), order) / k**alpha

    return Profile(
        name=f"psi:k={k},b={b:g}",
        alpha=alpha,
        derivative=derivative,
        lip_bound=1.0,
        normalizer=scale / k**alpha,
        g0_deriv=float(derivative(1, np.asarray(0.0))),
        params={"k": k, "b": b},
    )


def bump_centres(k: int) -> np.ndarray:
    """b_j = π/4 − 1/5 + (2j − 1)/(5k), j = 1..k: the k disjoint bump slots tiling I."""

    return INTERVAL_LEFT + (2.0 * np.arange(1, k + 1) - 1.0) / (5.0 * k)


def sine_with_bumps(
    weights: Sequence[float], centres: Sequence[float], k: int, alpha: float
) -> Profile:
    """sin(t) + (1 − γ) Σ w_j ψ_{k,c_j}(t) with |w_j| ≤ 1 and disjoint bump supports inside I."""

    _require_finite(alpha, "sine_with_bumps")
    weights = [float(w) for w in weights]
    centres = [float(c) for c in centres]
    if len(weights) != len(centres):
        msg = "Bump weights and centres must have equal length"
        raise ValueError(msg)
    if any(abs(w) > 1.0 for w in weights):
        msg = "Bump weights must lie in [-1, 1]"
        raise ValueError(msg)
    radius = 1.0 / (5.0 * k)
    slack = 1e-12
    for centre in centres:
        if centre - radius < INTERVAL[0] - slack or centre + radius > INTERVAL[1] + slack:
            msg = f"Bump at {centre:.6g} leaves the interval I"
            raise ValueError(msg)
    ordered = sorted(centres)
    if any(right - left < 2.0 * radius - slack for left, right in zip(ordered, ordered[1:])):
        msg = "Bump supports overlap"
        raise ValueError(msg)

    bumps = [psi_profile(k, centre, alpha) for centre in centres]

    def derivative(order: int, t: np.ndarray) -> np.ndarray:
        total = _sine_derivative(order, np.asarray(t, dtype=float))
        for weight, psi in zip(weights, bumps):
            if weight:
                total = total + (1.0 - GAMMA) * weight * psi.derivative(order, t)
        return total

    return Profile(
        name="sine_with_bumps",
        alpha=alpha,
        derivative=derivative,
        lip_bound=1.0,
        g0_deriv=1.0,
        params={"weights": weights, "centres": centres, "k": k},
    )


def catalog_profile(kind: ProfileKind | str, spec: ClassSpec, **params: Any) -> Profile:
    """Build a catalog profile for ``spec``; parameters follow the kind (see ``ProfileFactory``)."""

    kind = kind if isinstance(kind, ProfileKind) else ProfileKind.parse(kind)
    if spec.is_smooth and not kind.smooth:
        msg = f"Profile kind '{kind.label}' is not admitted to the C-infinity class"
        raise ValueError(msg)

    if kind is ProfileKind.LINEAR:
        return _certified_profile("linear", spec, _linear_derivative, g0=1.0)
    if kind is ProfileKind.SINE:
        return _certified_profile("sine", spec, _sine_derivative, g0=1.0)
    if kind is ProfileKind.EXP:
        return _certified_profile(
            "exp",
            spec,
            lambda order, t: np.exp(np.asarray(t, dtype=float) - 1.0),
            g0=math.exp(-1.0),
        )
    if kind is ProfileKind.SINE_CUBIC:
        return _certified_profile(
            "sine_cubic",
            spec,
            lambda order, t: _sine_derivative(order, t) - _cubic_part(order, t),
            g0=1.0,
        )
    if kind is ProfileKind.MONOMIAL:
        power = int(params.get("j", 1))
        if power < 1:
            msg = f"Monomial degree must be at least 1, got j={power}"
            raise ValueError(msg)
        return _certified_profile(
            f"monomial:j={power}",
            spec,
            _monomial_derivative(power),
            g0=1.0 if power == 1 else 0.0,
            params={"j": power},
        )
    if kind in (ProfileKind.CONSTANT, ProfileKind.ZERO):
        value = 0.0 if kind is ProfileKind.ZERO else float(params.get("c", 1.0))
        if abs(value) > 1.0:
            msg = f"Constant profile needs |c| <= 1, got c={value}"
            raise ValueError(msg)
        return Profile(
            name=kind.label if kind is ProfileKind.ZERO else f"constant:c={value:g}",
            alpha=spec.alpha,
            derivative=lambda order, t: np.full_like(
                np.asarray(t, dtype=float), value if order == 0 else 0.0
            ),
            lip_bound=abs(value),
            g0_deriv=0.0,
            params={"c": value},
        )
    if kind is ProfileKind.BUMP:
        norm = bump_norm(spec.alpha)
        normalizer = min(1.0, 1.0 / norm)
        return Profile(
            name="bump",
            alpha=spec.alpha,
            derivative=lambda order, t: normalizer * bump(t, order),
            lip_bound=norm * normalizer,
            normalizer=normalizer,
            g0_deriv=0.0,
        )
    if kind is ProfileKind.PSI:
        k = int(params.get("k", 1))
        b = float(params.get("b", 0.0))
        return psi_profile(k, b, spec.alpha)
    if kind is ProfileKind.SINE_PLUS_BUMPS:
        theta = str(params.get("theta", "1"))
        if not theta or any(bit not in "01" for bit in theta):
            msg = f"theta must be a non-empty bit string, got '{theta}'"
            raise ValueError(msg)
        k = int(params.get("k", len(theta)))
        if k < len(theta):
            msg = f"Need k >= len(theta), got k={k} for {len(theta)} bits"
            raise ValueError(msg)
        profile = sine_with_bumps(
            [float(bit) for bit in theta], bump_centres(k)[: len(theta)], k, spec.alpha
        )
        return dataclasses.replace(
            profile, name=f"sine_plus_bumps:theta={theta},k={k}", params={"theta": theta, "k": k}
        )
    return fooling_profile(
        float(params.get("anorm", 1.0)),
        float(params.get("eps", 0.5)),
        float(params.get("alpha", spec.alpha)),
    )


def fooling_profile(anorm: float, eps: float, alpha: float) -> Profile:
    """g_{a,ε}(t) = θ_α (t − ‖a‖₂(1 − ε²/2))₊^α: zero up to the kink, θ_α(‖a‖₂ε²/2)^α at ‖a‖₂."""

    _require_finite(alpha, "fooling")
    if not 0 < eps < 1:
        msg = f"Fooling radius must lie in (0, 1), got eps={eps}"
        raise ValueError(msg)
    if not 0 < anorm <= 1:
        msg = f"Direction norm must lie in (0, 1], got anorm={anorm}"
        raise ValueError(msg)
    theta = fooling_normalizer(alpha)
    kink = anorm * (1.0 - eps * eps / 2.0)
    return Profile(
        name=f"fooling:anorm={anorm:g},eps={eps:g},alpha={alpha:g}",
        alpha=alpha,
        derivative=_positive_power_derivative(alpha, kink, theta),
        lip_bound=1.0,
        normalizer=theta,
        g0_deriv=0.0,
        max_order=strict_floor(alpha),
        params={"anorm": anorm, "eps": eps, "alpha": alpha, "kink": kink},
    )


class ProfileFactory:
    """Factory helper to build catalog profiles from ids such as ``fooling:anorm=1,eps=0.5``."""

    @staticmethod
    def parse(profile_id: str) -> tuple[ProfileKind, dict[str, str]]:
        normalized = profile_id.strip()
        name, _, raw = normalized.partition(":")
        params: dict[str, str] = {}
        for item in filter(None, (part.strip() for part in raw.split(","))):
            key, sep, value = item.partition("=")
            if not sep:
                msg = f"Malformed profile parameter '{item}' in '{profile_id}'"
                raise ValueError(msg)
            params[key.strip().lower()] = value.strip()
        return ProfileKind.parse(name), params

    @staticmethod
    def create(profile_id: str, spec: ClassSpec) -> Profile:
        kind, params = ProfileFactory.parse(profile_id)
        profile = catalog_profile(kind, spec, **params)
        return dataclasses.replace(profile, name=profile_id.strip())


def _require_finite(alpha: float, what: str) -> None:
    if math.isinf(alpha):
        msg = f"No {what} profile exists for alpha = inf"
        raise ValueError(msg)
    if alpha <= 0:
        msg = f"Smoothness must be positive, got alpha={alpha}"
        raise ValueError(msg)


__all__ = [
    "GAMMA",
    "INTERVAL",
    "ProfileFactory",
    "ProfileKind",
    "bump_centres",
    "bump_norm",
    "bump_scale",
    "catalog_profile",
    "certificate",
    "fooling_normalizer",
    "fooling_profile",
    "psi_profile",
    "sine_with_bumps",
]
