"""Numerical Lipschitz-norm estimates and randomized class-membership checks."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Protocol

import numpy as np

from ...core.config import get_settings
from ...utils.seeding import spawn_rng, stable_key
from ..geometry.norms import normalize, p_norm, sample_ball
from .types import ClassSpec, Profile, RidgeFunction, strict_floor

logger = logging.getLogger(__name__)

# Highest derivative order inspected for the C^∞ norm.
SMOOTH_ORDERS = 8
_ALL_LAGS_LIMIT = 2048
_SHORT_LAGS = 256
_LONG_LAGS = 256


def seminorm_estimate(
    g: Profile, grid_size: int | None = None, *, alpha: float | None = None
) -> float:
    """Grid estimate (from below) of ‖g‖_{Lip_α[−1,1]}.

    The norm is max{‖g‖_{C^s}, sup |g^{(s)}(x) − g^{(s)}(y)| / (2 min{1, |x−y|}^β)}; for α = ∞
    it is the largest derivative sup up to ``SMOOTH_ORDERS``.
    """

    alpha = g.alpha if alpha is None else alpha
    size = get_settings().seminorm_grid_size if grid_size is None else grid_size
    if size < 2:
        msg = f"Grid size must be at least 2, got {size}"
        raise ValueError(msg)
    grid = np.linspace(-1.0, 1.0, size)

    if math.isinf(alpha):
        top = SMOOTH_ORDERS if g.max_order is None else min(SMOOTH_ORDERS, g.max_order)
        return max(float(np.max(np.abs(g.deriv(j, grid)))) for j in range(top + 1))

    s = strict_floor(alpha)
    beta = alpha - s
    sup_term = max(float(np.max(np.abs(g.deriv(j, grid)))) for j in range(s + 1))
    holder = holder_quotient(grid, np.asarray(g.deriv(s, grid)), beta)
    return max(sup_term, holder)


def holder_quotient(grid: np.ndarray, values: np.ndarray, beta: float) -> float:
    """max |v_i − v_j| / (2 min{1, |t_i − t_j|}^β) over a uniform grid.

    All lags are used for small grids; larger grids use every short lag plus geometrically spaced
    long ones.
    """

    size = grid.size
    if size < 2:
        return 0.0
    if size <= _ALL_LAGS_LIMIT:
        lags = np.arange(1, size)
    else:
        short = np.arange(1, _SHORT_LAGS + 1)
        long = np.geomspace(_SHORT_LAGS + 1, size - 1, _LONG_LAGS).astype(int)
        lags = np.unique(np.concatenate([short, long]))
    spacing = (grid[-1] - grid[0]) / (size - 1)
    best = 0.0
    for lag in lags:
        jump = float(np.max(np.abs(values[lag:] - values[:-lag])))
        denominator = 2.0 * min(1.0, lag * spacing) ** beta
        best = max(best, jump / denominator)
    return best


@dataclass(slots=True)
class MembershipWitness:
    """A point (or pair) at which a norm inequality fails."""

    check: str
    order: int
    lhs: float
    rhs: float
    x: list[float]
    y: list[float] | None = None

    def as_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "order": self.order,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "x": self.x,
            "y": self.y,
        }


@dataclass(slots=True)
class MembershipReport:
    """Outcome of a randomized membership check with the worst witnesses."""

    passed: bool
    checks: int
    worst_ratio: float
    witnesses: list[MembershipWitness] = field(default_factory=list)

    def as_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": self.checks,
            "worst_ratio": self.worst_ratio,
            "witnesses": [witness.as_dict() for witness in self.witnesses],
        }


class _Audit:
    """Collects inequality checks lhs ≤ rhs(1 + tol) + tol."""

    def __init__(self, tol: float) -> None:
        self.tol = tol
        self.checks = 0
        self.worst_ratio = 0.0
        self.witnesses: list[MembershipWitness] = []

    def scalar(self, check: str, order: int, lhs: float, rhs: float, x: list[float]) -> None:
        self.pointwise(check, order, np.array([lhs]), np.array([rhs]), np.array([x]))

    def pointwise(
        self,
        check: str,
        order: int,
        lhs: np.ndarray,
        rhs: np.ndarray,
        xs: np.ndarray,
        ys: np.ndarray | None = None,
    ) -> None:
        if lhs.size == 0:
            return
        self.checks += int(lhs.size)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(rhs > 0, lhs / rhs, np.where(lhs > 0, np.inf, 0.0))
        self.worst_ratio = max(self.worst_ratio, float(np.max(ratios)))
        excess = lhs - rhs * (1.0 + self.tol) - self.tol
        worst = int(np.argmax(excess))
        if excess[worst] > 0:
            self.witnesses.append(
                MembershipWitness(
                    check=check,
                    order=order,
                    lhs=float(lhs[worst]),
                    rhs=float(rhs[worst]),
                    x=np.atleast_1d(xs[worst]).tolist(),
                    y=None if ys is None else np.atleast_1d(ys[worst]).tolist(),
                )
            )

    def report(self) -> MembershipReport:
        return MembershipReport(
            passed=not self.witnesses,
            checks=self.checks,
            worst_ratio=self.worst_ratio,
            witnesses=self.witnesses,
        )


def membership_check(
    f: RidgeFunction,
    spec: ClassSpec,
    trials: int = 1000,
    *,
    seed: int | None = None,
    tol: float = 1e-6,
) -> MembershipReport:
    """Randomized check of f ∈ R^{α,p,κ}.

    Derivative bounds |D^γ f| ≤ 1 for |γ| ≤ s and the Hölder bound
    |D^γ f(x) − D^γ f(y)| ≤ 2 min{1, ‖x−y‖₁}^β for |γ| = s are checked at the worst multi-index
    (all mass on the largest direction coordinate), on random pairs, near pairs, pairs along the
    ridge line and pairs along the dominant axis.
    """

    if trials < 1:
        msg = f"Trials must be at least 1, got {trials}"
        raise ValueError(msg)
    seed = get_settings().default_seed if seed is None else seed
    rng = spawn_rng(seed, stable_key("membership"))
    audit = _Audit(tol)
    a = np.asarray(f.direction)
    d = f.d

    audit.scalar("direction", 0, float(p_norm(a, spec.p)), 1.0, a.tolist())
    if spec.kappa > 0:
        slope = abs(float(f.profile.deriv(1, 0.0)))
        audit.scalar("kappa", 1, spec.kappa, slope, [0.0] * d)

    a_inf = float(np.max(np.abs(a)))
    if a_inf == 0.0:
        points = sample_ball(rng, trials, d)
        values = np.abs(np.asarray(f(points)))
        audit.pointwise("sup", 0, values, np.ones_like(values), points)
        return audit.report()

    line = normalize(a)[None, :] * np.linspace(-1.0, 1.0, min(max(trials, 3), 4001))[:, None]
    points = np.vstack([sample_ball(rng, trials, d), line])
    top = SMOOTH_ORDERS if spec.is_smooth else int(spec.s)  # type: ignore[arg-type]
    for order in range(top + 1):
        values = np.abs(f.partial(order, points)) * a_inf**order
        audit.pointwise("sup", order, values, np.ones_like(values), points)

    if not spec.is_smooth:
        s = int(spec.s)  # type: ignore[arg-type]
        beta = float(spec.beta)  # type: ignore[arg-type]
        for xs, ys in _pairs(rng, a, trials, line):
            lhs = np.abs(f.partial(s, xs) - f.partial(s, ys)) * a_inf**s
            rhs = 2.0 * np.minimum(1.0, np.sum(np.abs(xs - ys), axis=1)) ** beta
            audit.pointwise("holder", s, lhs, rhs, xs, ys)

    report = audit.report()
    if not report.passed:
        logger.debug(
            "Membership check failed for %s: %d witnesses",
            f.profile.name,
            len(report.witnesses),
        )
    return report


def _pairs(
    rng: np.random.Generator, a: np.ndarray, trials: int, line: np.ndarray
) -> list[tuple[np.ndarray, np.ndarray]]:
    d = a.size
    pairs = [(sample_ball(rng, trials, d), sample_ball(rng, trials, d))]

    base = sample_ball(rng, trials, d)
    steps = np.geomspace(1e-4, 0.5, trials)
    offsets = rng.standard_normal((trials, d))
    offsets /= np.linalg.norm(offsets, axis=1, keepdims=True)
    pairs.append((base, _into_ball(base + steps[:, None] * offsets)))

    first = rng.integers(0, line.shape[0], size=trials)
    second = rng.integers(0, line.shape[0], size=trials)
    pairs.append((line[first], line[second]))
    pairs.append((line[:-1], line[1:]))

    axis = np.zeros((line.shape[0], d))
    axis[:, int(np.argmax(np.abs(a)))] = np.linspace(-1.0, 1.0, line.shape[0])
    pairs.append((axis[first], axis[second]))
    pairs.append((axis[:-1], axis[1:]))
    return pairs


def _into_ball(points: np.ndarray) -> np.ndarray:
    radii = np.linalg.norm(points, axis=1, keepdims=True)
    return np.where(radii > 1.0, points / np.maximum(radii, 1.0), points)


class JetFunction(Protocol):
    """A multivariate function exposing values and gradients on the unit ball."""

    d: int

    def __call__(self, x: np.ndarray) -> np.ndarray: ...

    def gradient(self, x: np.ndarray) -> np.ndarray: ...


def jet_membership_check(
    f: JetFunction,
    alpha: float,
    trials: int = 1000,
    *,
    seed: int | None = None,
    tol: float = 1e-6,
    focus: np.ndarray | None = None,
) -> MembershipReport:
    """Randomized check of ‖f‖_{Lip_α(Ω)} ≤ 1 for general (non-ridge) f with α ≤ 2.

    ``focus`` points (bump centers, say) get extra near pairs around them.
    """

    if not 0 < alpha <= 2:
        msg = f"Jet checks support 0 < alpha <= 2, got {alpha}"
        raise ValueError(msg)
    seed = get_settings().default_seed if seed is None else seed
    rng = spawn_rng(seed, stable_key("jet-membership"))
    audit = _Audit(tol)
    d = f.d
    s = strict_floor(alpha)
    beta = alpha - s

    def jet(points: np.ndarray) -> np.ndarray:
        if s == 0:
            return np.asarray(f(points), dtype=float)[:, None]
        return np.asarray(f.gradient(points), dtype=float)

    anchors = sample_ball(rng, trials, d)
    if focus is not None and len(focus):
        picks = rng.integers(0, len(focus), size=trials)
        jitter = rng.standard_normal((trials, d)) * 0.05
        anchors = np.vstack([anchors, _into_ball(np.asarray(focus)[picks] + jitter)])

    values = np.abs(np.asarray(f(anchors), dtype=float))
    audit.pointwise("sup", 0, values, np.ones_like(values), anchors)
    if s == 1:
        grads = np.max(np.abs(np.asarray(f.gradient(anchors))), axis=1)
        audit.pointwise("sup", 1, grads, np.ones_like(grads), anchors)

    steps = np.geomspace(1e-4, 0.5, anchors.shape[0])
    offsets = rng.standard_normal(anchors.shape)
    offsets /= np.linalg.norm(offsets, axis=1, keepdims=True)
    partners = [
        sample_ball(rng, anchors.shape[0], d),
        _into_ball(anchors + steps[:, None] * offsets),
    ]
    for ys in partners:
        lhs = np.max(np.abs(jet(anchors) - jet(ys)), axis=1)
        rhs = 2.0 * np.minimum(1.0, np.sum(np.abs(anchors - ys), axis=1)) ** beta
        audit.pointwise("holder", s, lhs, rhs, anchors, ys)
    return audit.report()


__all__ = [
    "JetFunction",
    "MembershipReport",
    "MembershipWitness",
    "holder_quotient",
    "jet_membership_check",
    "membership_check",
    "seminorm_estimate",
]
