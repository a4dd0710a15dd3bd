"""Entropy-number estimation and closed-form entropy envelopes."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable

import numpy as np
from scipy import optimize

from ...core.config import get_settings
from ...core.exceptions import BudgetExceededError
from .nets import farthest_first, greedy_packing, grid_cover
from .norms import NormSpec, as_norm, p_norm
from .types import EntropyEstimate, Target, TargetKind

logger = logging.getLogger(__name__)

EXACT_FINITE_LIMIT = 12


def schuett_bound(p: float, q: float, k: int, d: int) -> float:
    """Three-regime envelope of e_k(B_p^d, ℓ_q^d) without constants (base-2 logarithms)."""

    if not 0 < p <= q:
        msg = f"Envelope needs 0 < p <= q, got p={p}, q={q}"
        raise ValueError(msg)
    if k < 1 or d < 1:
        msg = f"Index and dimension must be positive, got k={k}, d={d}"
        raise ValueError(msg)
    exponent = _exponent_gap(p, q)
    if k <= math.log2(d):
        return 1.0
    if k < d:
        return (math.log2(1.0 + d / k) / k) ** exponent
    return 2.0 ** (-k / d) * d ** (-exponent)


def sphere_entropy_bound(p: float, q: float, k: int, d: int) -> tuple[float, float]:
    """Lower and upper envelopes of e_k(S_p^{d-1}, ℓ_q^d).

    For k ≥ d the envelopes differ in the exponent d−1 versus d−min{1,p}; below d both equal the
    two-regime ball envelope.
    """

    if d < 2:
        msg = f"Sphere envelopes need d >= 2, got {d}"
        raise ValueError(msg)
    if not 0 < p <= q:
        msg = f"Envelope needs 0 < p <= q, got p={p}, q={q}"
        raise ValueError(msg)
    if k < 1:
        msg = f"Index must be positive, got {k}"
        raise ValueError(msg)
    exponent = _exponent_gap(p, q)
    if k < d:
        value = 1.0 if k <= math.log2(d) else (math.log2(1.0 + d / k) / k) ** exponent
        return value, value
    scale = d ** (-exponent)
    lower = 2.0 ** (-k / (d - 1)) * scale
    upper = 2.0 ** (-k / (d - min(1.0, p))) * scale
    return lower, upper


def ridge_entropy_bracket(
    k: int,
    d: int,
    alpha: float,
    p: float = 2.0,
    *,
    c_lower: float = 1.0,
    c_upper: float = 1.0,
) -> tuple[float, float]:
    """Envelope bracket for e_{2k} of the ridge class with profile smoothness α in L∞(Ω).

    The lower side is half the larger of the direction-set and profile entropies; the upper side
    adds the direction entropy raised to min{α,1} to the profile entropy C k^{−α}.
    """

    if k < 1:
        msg = f"Index must be positive, got {k}"
        raise ValueError(msg)
    if not 0 < p <= 2:
        msg = f"Direction exponent must lie in (0, 2], got {p}"
        raise ValueError(msg)
    directions_lower = schuett_bound(p, 2.0, 2 * k, d)
    lower = 0.5 * max(directions_lower, c_lower * (2 * k) ** (-alpha))
    upper = schuett_bound(p, 2.0, k, d) ** min(alpha, 1.0) + c_upper * k ** (-alpha)
    return lower, upper


def ridge_entropy_threshold(d: int, c: float = 1.0) -> float:
    """Index c·d·log₂ d beyond which profile entropy k^{−α} dominates for p = 2."""

    return c * d * math.log2(d) if d > 1 else c


def entropy_estimate(
    target: Target,
    k: int,
    norm: NormSpec | float,
    *,
    seed: int | None = None,
    rel_tol: float | None = None,
    max_iter: int | None = None,
    max_centers: int | None = None,
    packing_budget: int | None = None,
) -> EntropyEstimate:
    """Bracket e_k(target, ℓ_q) = inf{ε > 0 : N_ε ≤ 2^{k−1}} numerically.

    The upper side bisects on lattice cover sizes, the lower side on greedy packings: a set of more
    than 2^{k−1} points with mutual distance above 2ε (2^{1/q}ε for quasi-norms) forces
    N_ε > 2^{k−1}.
    """

    if k < 1:
        msg = f"Index must be positive, got {k}"
        raise ValueError(msg)
    settings = get_settings()
    norm = as_norm(norm)
    seed = settings.default_seed if seed is None else seed
    rel_tol = settings.bisection_rel_tol if rel_tol is None else rel_tol
    max_iter = settings.bisection_max_iter if max_iter is None else max_iter
    limit = settings.max_cover_centers if max_centers is None else max_centers
    budget = settings.packing_budget if packing_budget is None else packing_budget

    count = 2 ** (k - 1)
    if count > limit:
        msg = f"2^{k - 1} centers exceed the enumeration limit {limit}"
        raise BudgetExceededError(msg)

    if target.kind is TargetKind.FINITE:
        return _finite_estimate(target, k, norm)
    if target.kind is TargetKind.BALL and target.d == 1:
        # [−1, 1] splits into 2^{k−1} intervals of radius 2^{1−k} in every norm.
        exact = 2.0 ** (1 - k)
        return EntropyEstimate(
            k=k,
            lower=exact,
            upper=exact,
            formula_value=_formula_value(target, k, norm),
            method="interval:exact",
        )

    radius = target.outer_radius(norm)
    upper = _cover_upper(target, count, norm, radius, rel_tol, max_iter, limit)
    lower = _packing_lower(target, count, norm, radius, k, seed, rel_tol, max_iter, budget)
    lower = min(lower, upper)

    estimate = EntropyEstimate(
        k=k, lower=lower, upper=upper, formula_value=_formula_value(target, k, norm)
    )
    logger.debug("Entropy bracket %s k=%d: [%.6g, %.6g]", target.kind.value, k, lower, upper)
    return estimate


def entropy_profile(
    target: Target, ks: Iterable[int], norm: NormSpec | float, *, seed: int | None = None
) -> list[EntropyEstimate]:
    """Estimates for several k with the brackets made monotone in k."""

    estimates = [entropy_estimate(target, k, norm, seed=seed) for k in sorted(set(ks))]
    running_upper = math.inf
    for estimate in estimates:
        running_upper = min(running_upper, estimate.upper)
        estimate.upper = running_upper
    running_lower = 0.0
    for estimate in reversed(estimates):
        running_lower = max(running_lower, estimate.lower)
        estimate.lower = running_lower
    return estimates


def _exponent_gap(p: float, q: float) -> float:
    return 1.0 / p - (0.0 if math.isinf(q) else 1.0 / q)


def _formula_value(target: Target, k: int, norm: NormSpec) -> float | None:
    q = norm.p
    if target.p > q:
        return None
    if target.kind is TargetKind.BALL:
        return schuett_bound(target.p, q, k, target.d)
    if target.kind is TargetKind.SPHERE and target.d >= 2:
        return sphere_entropy_bound(target.p, q, k, target.d)[0]
    return None


def _cover_size(target: Target, eps: float, norm: NormSpec, limit: int) -> int | None:
    """Lattice cover size, ``None`` when it exceeds ``limit``."""

    cover_target = target
    if target.kind is TargetKind.SPARSE_SPHERE:
        cover_target = Target.sphere(target.d)
    try:
        return grid_cover(cover_target, eps, norm, max_centers=limit).size
    except BudgetExceededError:
        return None


def _cover_upper(
    target: Target,
    count: int,
    norm: NormSpec,
    radius: float,
    rel_tol: float,
    max_iter: int,
    limit: int,
) -> float:
    if count == 1:
        return radius
    # Sphere lattices shrink after the final filter, so intermediate layers may overshoot.
    layer_limit = count if target.kind is TargetKind.BALL else min(limit, max(64 * count, 10_000))

    def fits(eps: float) -> bool:
        size = _cover_size(target, eps, norm, layer_limit)
        return size is not None and size <= count

    if not fits(radius):
        return radius
    hi = radius
    lo = radius / 2.0
    for _ in range(max_iter):
        if not fits(lo):
            break
        hi, lo = lo, lo / 2.0
    else:
        return hi
    for _ in range(max_iter):
        if (hi - lo) <= rel_tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if fits(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _packing_lower(
    target: Target,
    count: int,
    norm: NormSpec,
    radius: float,
    k: int,
    seed: int,
    rel_tol: float,
    max_iter: int,
    budget: int,
) -> float:
    # Points at mutual distance above `factor·ε` cannot share a ball of radius ε.
    factor = 2.0 if norm.p >= 1 else 2.0 ** (1.0 / norm.p)
    source: Target | np.ndarray = target
    if target.kind is TargetKind.BALL and target.d == 1:
        source = np.linspace(-1.0, 1.0, 2 ** (k + 6) + 1).reshape(-1, 1)

    def packs(separation: float) -> bool:
        net = greedy_packing(
            source, separation, norm, budget, seed=seed, max_points=count + 1, target=target
        )
        return net.size > count

    hi = factor * radius
    lo = hi / 2.0
    for _ in range(4 * max_iter):
        if packs(lo):
            break
        hi, lo = lo, lo / 2.0
    else:
        return 0.0
    for _ in range(max_iter):
        if (hi - lo) <= rel_tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if packs(mid):
            lo = mid
        else:
            hi = mid
    return lo / factor


def _finite_estimate(target: Target, k: int, norm: NormSpec) -> EntropyEstimate:
    assert target.points is not None
    points = target.points
    count = 2 ** (k - 1)
    if points.shape[0] <= count:
        return EntropyEstimate(k=k, lower=0.0, upper=0.0, method="finite:trivial")
    if points.shape[0] <= EXACT_FINITE_LIMIT and _exact_norm(norm, target.d):
        exact = exact_finite_entropy(points, k, norm)
        return EntropyEstimate(k=k, lower=exact, upper=exact, method="finite:exhaustive")
    _, reach = farthest_first(points, count, norm)
    # The next farthest-first point and the chosen centers are count + 1 points at mutual
    # distance >= reach, so two of them share a ball of radius >= reach / 2.
    return EntropyEstimate(k=k, lower=reach / 2.0, upper=reach, method="finite:farthest-first")


def _exact_norm(norm: NormSpec, d: int) -> bool:
    return d == 1 or math.isinf(norm.p) or norm.p in (1.0, 2.0)


def _check_exact_inputs(points: np.ndarray, norm: NormSpec) -> np.ndarray:
    array = np.atleast_2d(np.asarray(points, dtype=float))
    if array.shape[0] > EXACT_FINITE_LIMIT:
        msg = f"Exhaustive search supports at most {EXACT_FINITE_LIMIT} points"
        raise BudgetExceededError(msg)
    if not _exact_norm(norm, array.shape[1]):
        msg = f"Exhaustive covering search needs q in {{1, 2, inf}} or d = 1, got q={norm.p}"
        raise ValueError(msg)
    return array


def _members(mask: int, total: int) -> list[int]:
    return [i for i in range(total) if mask >> i & 1]


def _subset_radii(points: np.ndarray, norm: NormSpec) -> np.ndarray:
    """Radius of the smallest closed ball (center anywhere) holding each subset, indexed by mask."""

    if points.shape[1] == 1 or math.isinf(norm.p):
        return _chebyshev_radii(points)
    if norm.p == 2.0:
        return _euclidean_radii(points)
    return _manhattan_radii(points)


def _chebyshev_radii(points: np.ndarray) -> np.ndarray:
    total = points.shape[0]
    radii = np.zeros(1 << total)
    for mask in range(1, 1 << total):
        block = points[_members(mask, total)]
        radii[mask] = float(np.max(block.max(axis=0) - block.min(axis=0))) / 2.0
    return radii


def _circumcenter(block: np.ndarray) -> np.ndarray | None:
    """Point of the affine hull equidistant from every row; ``None`` for dependent rows."""

    origin = block[0]
    spans = block[1:] - origin
    if spans.shape[0] == 0:
        return origin.copy()
    if np.linalg.matrix_rank(spans) < spans.shape[0]:
        return None
    weights = np.linalg.solve(2.0 * spans @ spans.T, np.sum(spans * spans, axis=1))
    return origin + weights @ spans


def _euclidean_radii(points: np.ndarray) -> np.ndarray:
    """Minimum enclosing balls from circumballs of supports with at most d + 1 points.

    Every candidate ball bounds the subsets it contains, and each subset's enclosing ball is the
    circumball of one of its supports, so the subset radius is the least candidate containing it.
    """

    total, d = points.shape
    full = 1 << total
    bits = 1 << np.arange(total)
    radii = np.full(full, np.inf)
    for size in range(1, min(d + 1, total) + 1):
        for support in itertools.combinations(range(total), size):
            center = _circumcenter(points[list(support)])
            if center is None:
                continue
            radius = float(np.linalg.norm(points[support[0]] - center))
            inside = np.linalg.norm(points - center, axis=1) <= radius * (1.0 + 1e-12) + 1e-12
            mask = int(bits[inside].sum())
            radii[mask] = min(radii[mask], radius)
    masks = np.arange(full)
    for bit in bits:
        without = masks[(masks & bit) == 0]
        radii[without] = np.minimum(radii[without], radii[without | bit])
    radii[0] = 0.0
    return radii


def _manhattan_radii(points: np.ndarray) -> np.ndarray:
    """ℓ_1 Chebyshev radii as linear programs in (center, radius, |x_i − c| bounds)."""

    total, d = points.shape
    radii = np.zeros(1 << total)
    for mask in range(1, 1 << total):
        block = points[_members(mask, total)]
        m = block.shape[0]
        # variables: c (d), r, t (m * d) with t_ij >= |x_ij - c_j| and sum_j t_ij <= r
        cost = np.zeros(d + 1 + m * d)
        cost[d] = 1.0
        rows, rhs = [], []
        for i in range(m):
            for j in range(d):
                upper = np.zeros_like(cost)
                upper[j], upper[d + 1 + i * d + j] = -1.0, -1.0
                lower = np.zeros_like(cost)
                lower[j], lower[d + 1 + i * d + j] = 1.0, -1.0
                rows += [upper, lower]
                rhs += [-block[i, j], block[i, j]]
            total_row = np.zeros_like(cost)
            total_row[d] = -1.0
            total_row[d + 1 + i * d : d + 1 + (i + 1) * d] = 1.0
            rows.append(total_row)
            rhs.append(0.0)
        bounds = [(None, None)] * d + [(0.0, None)] * (1 + m * d)
        result = optimize.linprog(
            cost, A_ub=np.array(rows), b_ub=np.array(rhs), bounds=bounds, method="highs"
        )
        if not result.success:
            msg = f"Chebyshev radius LP failed: {result.message}"
            raise RuntimeError(msg)
        radii[mask] = float(result.x[d])
    return radii


def _min_cover(radii: np.ndarray, total: int, eps: float) -> int:
    full = (1 << total) - 1
    coverable = radii <= eps + 1e-15
    best = [0] + [total + 1] * full
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        sub = rest
        while True:
            group = sub | low
            if coverable[group]:
                best[mask] = min(best[mask], best[mask ^ group] + 1)
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return best[full]


def finite_covering_number(points: np.ndarray, eps: float, norm: NormSpec | float) -> int:
    """Minimal number of closed ε-balls (centers anywhere) covering a small point set."""

    norm = as_norm(norm)
    array = _check_exact_inputs(points, norm)
    if array.shape[0] == 0:
        return 0
    return _min_cover(_subset_radii(array, norm), array.shape[0], eps)


def finite_packing_number(points: np.ndarray, eps: float, norm: NormSpec | float) -> int:
    """Largest subset with pairwise distances strictly above ε."""

    norm = as_norm(norm)
    array = np.atleast_2d(np.asarray(points, dtype=float))
    total = array.shape[0]
    if total > EXACT_FINITE_LIMIT:
        msg = f"Exhaustive search supports at most {EXACT_FINITE_LIMIT} points"
        raise BudgetExceededError(msg)
    conflicts = [0] * total
    for i in range(total):
        for j in range(total):
            if i != j and p_norm(array[i] - array[j], norm) <= eps:
                conflicts[i] |= 1 << j
    best = 0
    for mask in range(1 << total):
        members = [i for i in range(total) if mask >> i & 1]
        if all(not (conflicts[i] & mask) for i in members):
            best = max(best, len(members))
    return best


def exact_finite_entropy(points: np.ndarray, k: int, norm: NormSpec | float) -> float:
    """e_k of a small finite set by exhaustive search over partitions."""

    norm = as_norm(norm)
    array = _check_exact_inputs(points, norm)
    total = array.shape[0]
    count = 2 ** (k - 1)
    if total <= count:
        return 0.0
    radii = _subset_radii(array, norm)
    candidates = np.unique(radii[1:])
    lo, hi = 0, candidates.size - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _min_cover(radii, total, float(candidates[mid])) <= count:
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


__all__ = [
    "entropy_estimate",
    "entropy_profile",
    "exact_finite_entropy",
    "finite_covering_number",
    "finite_packing_number",
    "ridge_entropy_bracket",
    "ridge_entropy_threshold",
    "schuett_bound",
    "sphere_entropy_bound",
]
