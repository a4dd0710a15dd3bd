"""Complexity-bound formulas, sampling reference curves and the tractability classifier.

All logarithms are base 2. The existential constants default to 1 and come from settings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from ...core.config import Settings, get_settings
from ..classes.types import strict_floor
from ..geometry.entropy import schuett_bound


@dataclass(frozen=True, slots=True)
class BoundConstants:
    """C₀, C₁, C_{p,α} of the upper bound and c₀, c₁, c_{p,α} of the lower bound."""

    c0_upper: float = 1.0
    c1_upper: float = 1.0
    c_upper: float = 1.0
    c0_lower: float = 1.0
    c1_lower: float = 1.0
    c_lower: float = 1.0

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> BoundConstants:
        settings = settings or get_settings()
        return cls(
            c0_upper=settings.bound_c0_upper,
            c1_upper=settings.bound_c1_upper,
            c_upper=settings.bound_c_upper,
            c0_lower=settings.bound_c0_lower,
            c1_lower=settings.bound_c1_lower,
            c_lower=settings.bound_c_lower,
        )

    def as_dict(self) -> dict[str, float]:
        return {
            "c0_upper": self.c0_upper,
            "c1_upper": self.c1_upper,
            "c_upper": self.c_upper,
            "c0_lower": self.c0_lower,
            "c1_lower": self.c1_lower,
            "c_lower": self.c_lower,
        }


@dataclass(slots=True)
class ComplexityBound:
    """A value of a bound on log₂ n(ε, d) with the branch it came from."""

    value: float
    branch: str
    binding: bool = True
    thresholds: dict[str, float] = field(default_factory=dict)
    constants: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "branch": self.branch,
            "binding": self.binding,
            "thresholds": self.thresholds,
            "constants": self.constants,
        }


def _check_p_below_two(p: float) -> None:
    if not 0 < p < 2:
        msg = f"Complexity formulas need 0 < p < 2, got p={p}"
        raise ValueError(msg)


def _check_common(eps: float, d: int, alpha: float) -> None:
    if not 0 < eps <= 1:
        msg = f"Accuracy must lie in (0, 1], got eps={eps}"
        raise ValueError(msg)
    if d < 2:
        msg = f"Complexity formulas need d >= 2, got d={d}"
        raise ValueError(msg)
    if math.isinf(alpha) or alpha <= 0:
        msg = f"Complexity formulas need a finite positive alpha, got alpha={alpha}"
        raise ValueError(msg)


def upper_eta(alpha: float, p: float) -> float:
    """η = α(1/max{1,p} − 1/2)."""

    return alpha * (1.0 / max(1.0, p) - 0.5)


def upper_thresholds(d: int, alpha: float, p: float, c: float = 1.0) -> tuple[float, float]:
    """(ε₁, ε₂) = (C[log(1+d/log d)/log d]^η, C d^{−η})."""

    eta = upper_eta(alpha, p)
    log_d = math.log2(d)
    return c * (math.log2(1.0 + d / log_d) / log_d) ** eta, c * d ** (-eta)


def _upper_branches(
    eps: float, d: int, eta: float, constants: BoundConstants, first: float, second: float
) -> tuple[float, str]:
    c0, c1 = constants.c0_upper, constants.c1_upper
    if eps >= first:
        return c0 + c1 * math.log2(d), "log d"
    if eps >= second:
        return c0 + c1 * math.log2(d) * (1.0 / eps) ** (1.0 / eta), "log d (1/eps)^(1/eta)"
    value = c0 + c1 * math.log2(1.0 / eps) * (1.0 / eps) ** (1.0 / eta)
    return value, "log(1/eps) (1/eps)^(1/eta)"


def complexity_upper(
    eps: float,
    d: int,
    alpha: float,
    p: float,
    constants: BoundConstants | None = None,
    *,
    monotone: bool = True,
) -> ComplexityBound:
    """Three-branch upper bound on log₂ n(ε, d) for p < 2.

    With ``monotone`` the value is the infimum of the branch formula over ε' ≤ ε (n(ε, d) is
    non-increasing in ε); the candidates are ε itself and the left limits at lower thresholds.
    """

    _check_common(eps, d, alpha)
    _check_p_below_two(p)
    constants = constants or BoundConstants.from_settings()
    eta = upper_eta(alpha, p)
    first, second = upper_thresholds(d, alpha, p, constants.c_upper)
    value, branch = _upper_branches(eps, d, eta, constants, first, second)
    if monotone:
        for threshold in (first, second):
            if threshold < eps and threshold > 0:
                below = math.nextafter(threshold, 0.0)
                candidate, name = _upper_branches(below, d, eta, constants, first, second)
                if candidate < value:
                    value, branch = candidate, f"{name} (envelope)"
    return ComplexityBound(
        value=value,
        branch=branch,
        thresholds={"eps1": first, "eps2": second, "eta": eta},
        constants=constants.as_dict(),
    )


def complexity_lower(
    eps: float, d: int, alpha: float, p: float, constants: BoundConstants | None = None
) -> ComplexityBound:
    """c₀ + c₁(1/ε)^{1/(α(1/p−1/2))}, binding only for ε₃ ≤ ε < ε₁."""

    _check_common(eps, d, alpha)
    _check_p_below_two(p)
    constants = constants or BoundConstants.from_settings()
    gamma = alpha * (1.0 / p - 0.5)
    log_d = math.log2(d)
    first = constants.c_lower * (math.log2(1.0 + d / log_d) / log_d) ** gamma
    second = constants.c_lower * d ** (-gamma)
    third = 4.0 ** (-alpha) * second
    value = constants.c0_lower + constants.c1_lower * (1.0 / eps) ** (1.0 / gamma)
    binding = third <= eps < first
    return ComplexityBound(
        value=value,
        branch="(1/eps)^(1/gamma)" if binding else "outside window",
        binding=binding,
        thresholds={"eps1": first, "eps2": second, "eps3": third, "gamma": gamma},
        constants=constants.as_dict(),
    )


def upper_sampling_reference(n: int, d: int, alpha: float, p: float, c: float = 1.0) -> float:
    """Upper reference curve for the sampling numbers g_{n,d}(R^{α,p}) (α finite)."""

    if n < 1:
        msg = f"Budget must be positive, got n={n}"
        raise ValueError(msg)
    s = strict_floor(alpha)
    block = math.comb(d + s, s)
    eta = upper_eta(alpha, p)
    if n <= 2 * d * block:
        return c
    if n <= 2 ** (d + 1) * block:
        log_n1 = math.log2(n / (2.0 * block))
        return c * (math.log2(1.0 + d / log_n1) / log_n1) ** eta
    return c * n ** (-alpha / d) * d ** (-eta)


def lower_sampling_reference(n: int, d: int, alpha: float, p: float, c: float = 1.0) -> float:
    """Lower reference curve for g_{n,d}(R^{α,p}); d = 1 uses the univariate rate n^{−α}."""

    if n < 1:
        msg = f"Budget must be positive, got n={n}"
        raise ValueError(msg)
    gamma = alpha * (1.0 / p - 0.5)
    if d == 1:
        return c * n ** (-alpha)
    if n < d:
        return c
    if n < 2 ** (d - 1):
        log_term = 2.0 + math.log2(n)
        return c * (math.log2(1.0 + d / log_term) / log_term) ** gamma
    return c * n ** (-2.0 * alpha / (d - 1)) * d ** (-gamma)


def entropy_sampling_upper(n: int, d: int, alpha: float, p: float) -> float:
    """e_{k−Δ}(B̄₂^d, ℓ_{p'}^d)^α with k = ⌊log₂ n⌋ + 2 and Δ = 1 + ⌈log₂ binom(d+s, s)⌉."""

    s = strict_floor(alpha)
    k = int(math.floor(math.log2(n))) + 2
    shift = 1 + math.ceil(math.log2(math.comb(d + s, s)))
    index = k - shift
    if index < 1:
        return 1.0
    q = math.inf if p <= 1 else p / (p - 1.0)
    return schuett_bound(2.0, q, index, d) ** alpha


def two_step_reference(n: int, d: int, alpha: float, c: float = 1.0) -> float:
    """C(n−d)^{−α}; with n ≤ d no algorithm beats the trivial error 1."""

    if n <= d:
        return 1.0
    return c * (n - d) ** (-alpha)


def quasi_polynomial_bound(eps: float, d: int, t: float = 1.0, c: float = 1.0) -> float:
    """C exp(t(1 + ln(1/ε))(1 + ln d))."""

    return c * math.exp(t * (1.0 + math.log(1.0 / eps)) * (1.0 + math.log(d)))


def weak_tractability_ratio(log2_n: float, eps: float, d: int) -> float:
    """log₂ n(ε, d) / (1/ε + d); tends to 0 for weakly tractable problems."""

    return log2_n / (1.0 / eps + d)


class TractabilityLabel(Enum):
    """Tractability verdicts with the classification clause they cite (0 when none applies)."""

    CURSE = ("curse", 1)
    INTRACTABLE = ("intractable", 3)
    WEAKLY_TRACTABLE = ("weakly tractable", 4)
    QUASI_POLYNOMIAL = ("quasi-polynomially tractable", 5)
    POLYNOMIAL = ("polynomially tractable", 6)
    UNKNOWN_GAP = ("unknown-gap", 0)

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def clause(self) -> int:
        return self.value[1]


@dataclass(frozen=True, slots=True)
class TractabilityVerdict:
    alpha: float
    p: float
    kappa: float
    label: TractabilityLabel
    curse_excluded: bool
    reason: str

    def as_dict(self) -> dict[str, Any]:
        return {
            "alpha": "inf" if math.isinf(self.alpha) else self.alpha,
            "p": self.p,
            "kappa": self.kappa,
            "label": self.label.label,
            "clause": self.label.clause or None,
            "curse_excluded": self.curse_excluded,
            "reason": self.reason,
        }


def tractability_classify(alpha: float, p: float, kappa: float = 0.0) -> TractabilityVerdict:
    """Classify L∞-approximation of R^{α,p,κ}; depends only on (α, p, κ)."""

    if not alpha > 0:
        msg = f"Smoothness must be positive, got alpha={alpha}"
        raise ValueError(msg)
    if not 0 < p <= 2:
        msg = f"Direction exponent must lie in (0, 2], got p={p}"
        raise ValueError(msg)
    if not 0 <= kappa <= 1:
        msg = f"Derivative floor must lie in [0, 1], got kappa={kappa}"
        raise ValueError(msg)
    if kappa > 0 and alpha <= 1:
        msg = "A positive derivative floor requires alpha > 1"
        raise ValueError(msg)

    curse_excluded = p < 2

    def verdict(label: TractabilityLabel, reason: str) -> TractabilityVerdict:
        return TractabilityVerdict(alpha, p, kappa, label, curse_excluded, reason)

    if kappa > 0:
        return verdict(TractabilityLabel.POLYNOMIAL, "kappa > 0 and alpha > 1")
    if math.isinf(alpha):
        return verdict(TractabilityLabel.QUASI_POLYNOMIAL, "alpha = inf")
    if p == 2:
        return verdict(TractabilityLabel.CURSE, "p = 2 and alpha < inf")
    intractable_limit = 1.0 / (1.0 / p - 0.5)
    if alpha <= intractable_limit:
        return verdict(
            TractabilityLabel.INTRACTABLE, f"alpha <= 1/(1/p - 1/2) = {intractable_limit:.6g}"
        )
    weak_limit = 1.0 / (1.0 / max(1.0, p) - 0.5)
    if alpha > weak_limit:
        return verdict(
            TractabilityLabel.WEAKLY_TRACTABLE, f"alpha > 1/(1/max(1,p) - 1/2) = {weak_limit:.6g}"
        )
    return verdict(
        TractabilityLabel.UNKNOWN_GAP,
        f"{intractable_limit:.6g} < alpha <= {weak_limit:.6g} is not covered for p < 1",
    )


__all__ = [
    "BoundConstants",
    "ComplexityBound",
    "TractabilityLabel",
    "TractabilityVerdict",
    "complexity_lower",
    "complexity_upper",
    "entropy_sampling_upper",
    "lower_sampling_reference",
    "quasi_polynomial_bound",
    "tractability_classify",
    "two_step_reference",
    "upper_eta",
    "upper_sampling_reference",
    "upper_thresholds",
    "weak_tractability_ratio",
]
