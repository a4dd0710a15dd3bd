"""Lattice covers, greedy packings and sparse-sphere packings."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass

import numpy as np

from ...core.config import get_settings
from ...core.exceptions import BudgetExceededError
from ...utils.seeding import spawn_rng
from .norms import NormSpec, as_norm, nearest_centers, p_norm
from .types import Net, NetRole, Target, TargetKind

logger = logging.getLogger(__name__)

PointSource = Target | np.ndarray | Callable[[np.random.Generator, int], np.ndarray]

# Lattice cells that only touch the target on its boundary are dropped; a neighbouring cell
# closer to the origin contains the touching point.
_TOUCH_TOL = 1e-12


def grid_cover(
    target: Target,
    eps: float,
    norm: NormSpec | float,
    *,
    max_centers: int | None = None,
) -> Net:
    """Axis-aligned lattice ε-cover of a ball or sphere target in the given norm.

    The lattice spacing is 2ε/d^{1/q}, so every point is within ε (in ℓ_q) of the center of the
    cube containing it. Both lattice phases (through the origin and shifted by half a cell) are
    built and the smaller retained. The nearest-center assignment of the returned net is the
    disjoint cell partition.
    """

    if eps <= 0:
        msg = f"Cover radius must be positive, got {eps}"
        raise ValueError(msg)
    if target.kind not in (TargetKind.BALL, TargetKind.SPHERE):
        msg = f"Lattice covers support ball and sphere targets, not {target.kind.value}"
        raise ValueError(msg)

    norm = as_norm(norm)
    limit = max_centers if max_centers is not None else get_settings().max_cover_centers
    d = target.d
    spacing = 2.0 * eps / (1.0 if math.isinf(norm.p) else d ** (1.0 / norm.p))

    best: np.ndarray | None = None
    best_phase = 0.0
    overflow: BudgetExceededError | None = None
    for phase in (0.0, 0.5):
        try:
            centers = _lattice_centers(target, spacing, phase, limit)
        except BudgetExceededError as exc:
            overflow = exc
            continue
        if best is None or centers.shape[0] < best.shape[0]:
            best, best_phase = centers, phase
    if best is None:
        assert overflow is not None
        raise overflow

    return Net(
        centers=best,
        radius=eps,
        norm=norm,
        role=NetRole.COVER,
        target=target,
        metadata={"spacing": spacing, "phase": best_phase, "construction": "lattice"},
    )


def _lattice_centers(target: Target, spacing: float, phase: float, limit: int) -> np.ndarray:
    half = spacing / 2.0
    reach = int(math.ceil(1.0 / spacing)) + 1
    axis = (np.arange(-reach, reach + 1) + phase) * spacing
    shrink = np.maximum(np.abs(axis) - half, 0.0)
    axis, shrink = axis[shrink < 1.0 - _TOUCH_TOL], shrink[shrink < 1.0 - _TOUCH_TOL]

    p = target.p
    contribution = shrink if math.isinf(p) else shrink**p
    rows = np.zeros((1, 0))
    accumulated = np.zeros(1)
    for _ in range(target.d):
        if math.isinf(p):
            candidate = np.maximum(accumulated[:, None], contribution[None, :])
        else:
            candidate = accumulated[:, None] + contribution[None, :]
        keep = candidate < 1.0 - _TOUCH_TOL
        if int(keep.sum()) > limit:
            msg = f"Lattice cover needs more than {limit} centers"
            raise BudgetExceededError(msg)
        row_index, column_index = np.nonzero(keep)
        rows = np.hstack([rows[row_index], axis[column_index][:, None]])
        accumulated = candidate[row_index, column_index]

    if target.kind is TargetKind.SPHERE:
        far = np.asarray(p_norm(np.abs(rows) + half, p, axis=1))
        rows = rows[far >= 1.0 - _TOUCH_TOL]
    return rows


@dataclass(slots=True, eq=False)
class AnchoredCover:
    """Lattice cells of B̄₂^d with one query anchor per cell inside the ball.

    Cells are built at radius ε/2; an anchor is the lattice center when it lies in the ball and
    otherwise the cell point closest to the origin, so every point of a cell is within the cell's
    ℓ_q diameter ε of its anchor.
    """

    cells: Net
    anchors: np.ndarray
    radius: float

    @property
    def size(self) -> int:
        return self.cells.size

    @property
    def d(self) -> int:
        return self.cells.d

    def assign(self, points: np.ndarray) -> np.ndarray:
        return self.cells.assign(points)

    @classmethod
    def origin(cls, d: int, norm: NormSpec | float) -> AnchoredCover:
        """The single cell {Ω} anchored at 0, radius sup_{x∈Ω} ‖x‖_q."""

        norm = as_norm(norm)
        target = Target.ball(d, 2.0)
        radius = target.outer_radius(norm)
        cells = Net(
            centers=np.zeros((1, d)),
            radius=radius,
            norm=norm,
            role=NetRole.COVER,
            target=target,
            metadata={"construction": "origin"},
        )
        return cls(cells=cells, anchors=np.zeros((1, d)), radius=radius)

    def as_dict(self) -> dict[str, object]:
        payload = self.cells.as_dict()
        payload["radius"] = self.radius
        return payload


def anchored_cover(
    d: int, eps: float, norm: NormSpec | float, *, max_centers: int | None = None
) -> AnchoredCover:
    """ε-cover of B̄₂^d in ℓ_q whose query anchors all lie in B̄₂^d."""

    lattice = grid_cover(Target.ball(d, 2.0), eps / 2.0, norm, max_centers=max_centers)
    half = lattice.metadata["spacing"] / 2.0
    centers = lattice.centers
    inside = np.linalg.norm(centers, axis=1) <= 1.0
    corners = np.sign(centers) * np.maximum(np.abs(centers) - half, 0.0)
    anchors = np.where(inside[:, None], centers, corners)
    lattice.metadata["construction"] = "anchored-lattice"
    return AnchoredCover(cells=lattice, anchors=anchors, radius=eps)


def greedy_packing(
    source: PointSource,
    eps: float,
    norm: NormSpec | float,
    budget: int | None = None,
    *,
    seed: int = 0,
    max_points: int | None = None,
    target: Target | None = None,
    batch_size: int = 256,
) -> Net:
    """Greedy ε-packing: keep candidates farther than ε from every kept point.

    Random sources stop after ``budget`` consecutive rejections; finite sources (arrays) are
    scanned in order until exhausted or the rejection budget runs out.
    """

    norm = as_norm(norm)
    budget = budget if budget is not None else get_settings().packing_budget
    if budget < 1:
        msg = f"Rejection budget must be at least 1, got {budget}"
        raise ValueError(msg)

    if isinstance(source, Target):
        target = source
        draw: Callable[[np.random.Generator, int], np.ndarray] | None = source.sample
        finite: np.ndarray | None = None
    elif callable(source):
        if target is None:
            msg = "A target descriptor is required for callable point sources"
            raise ValueError(msg)
        draw, finite = source, None
    else:
        finite = np.asarray(source, dtype=float)
        if finite.ndim == 1:
            finite = finite.reshape(-1, target.d if target is not None else 1)
        if target is None:
            target = Target.finite(finite) if finite.size else Target.ball(max(finite.shape[1], 1))
        draw = None

    d = target.d
    kept = np.empty((64, d))
    count = 0
    rejections = 0
    rng = spawn_rng(seed)

    def batches() -> Iterator[np.ndarray]:
        if finite is not None:
            for start in range(0, finite.shape[0], batch_size):
                yield finite[start : start + batch_size]
            return
        assert draw is not None
        while True:
            yield draw(rng, batch_size)

    done = False
    for batch in batches():
        if count:
            _, distances = nearest_centers(batch, kept[:count], norm)
            far = distances > eps
        else:
            far = np.ones(batch.shape[0], dtype=bool)
        batch_start = count
        for row, candidate in enumerate(batch):
            accepted = bool(far[row])
            if accepted and count > batch_start:
                fresh = np.asarray(p_norm(kept[batch_start:count] - candidate, norm, axis=1))
                accepted = bool(fresh.min() > eps)
            if accepted:
                if count == kept.shape[0]:
                    kept = np.vstack([kept, np.empty_like(kept)])
                kept[count] = candidate
                count += 1
                rejections = 0
                if max_points is not None and count >= max_points:
                    done = True
                    break
            else:
                rejections += 1
                if rejections >= budget:
                    done = True
                    break
        if done:
            break

    return Net(
        centers=kept[:count].copy(),
        radius=eps,
        norm=norm,
        role=NetRole.PACKING,
        target=target,
        metadata={"construction": "greedy", "seed": seed, "rejection_budget": budget},
    )


def sparse_sphere_packing(
    d: int,
    m: int,
    p: float = 2.0,
    *,
    budget: int | None = None,
    seed: int = 0,
    enumeration_limit: int = 100_000,
) -> Net:
    """Packing of the m-sparse Euclidean sphere with pairwise distance > 1/√2.

    Candidates are sign vectors on m-element supports scaled by 1/√m. Small families are
    enumerated in a seeded order; large ones are sampled. ``budget`` caps the number of kept
    points (default: the cardinality (d/(4m))^{m/2} for sampled families, unlimited otherwise).
    """

    if not 1 <= m <= d:
        msg = f"Sparsity must satisfy 1 <= m <= d, got m={m}, d={d}"
        raise ValueError(msg)

    target = Target.sparse_sphere(d, m)
    target_size = (d / (4.0 * m)) ** (m / 2.0)
    total = math.comb(d, m) * 2**m
    separation = 1.0 / math.sqrt(2.0)
    rejection_budget = get_settings().packing_budget

    if total <= enumeration_limit:
        candidates = np.zeros((total, d))
        row = 0
        for support in itertools.combinations(range(d), m):
            for signs in itertools.product((-1.0, 1.0), repeat=m):
                candidates[row, list(support)] = signs
                row += 1
        candidates /= math.sqrt(m)
        candidates = spawn_rng(seed).permutation(candidates)
        net = greedy_packing(
            candidates, separation, 2.0, budget=total, max_points=budget, target=target
        )
    else:
        cap = budget if budget is not None else max(1, math.ceil(target_size))
        net = greedy_packing(
            target, separation, 2.0, budget=rejection_budget, seed=seed, max_points=cap
        )

    achieved = net.size
    shortfall = max(0, math.ceil(target_size) - achieved)
    if shortfall:
        logger.warning(
            "Sparse sphere packing d=%d m=%d reached %d of %.1f points", d, m, achieved, target_size
        )
    net.metadata.update(
        {
            "construction": "sparse-greedy",
            "target_size": target_size,
            "achieved": achieved,
            "shortfall": shortfall,
            "preimage_scale": m ** (-1.0 / p),
            "p": p,
        }
    )
    return net


def farthest_first(
    points: np.ndarray, count: int, norm: NormSpec | float
) -> tuple[np.ndarray, float]:
    """Farthest-first traversal: ``count`` center indices and the covering radius they achieve.

    The next point that would be picked lies at the returned radius from all centers, and the
    centers are pairwise at least that far apart.
    """

    norm = as_norm(norm)
    total = points.shape[0]
    if total == 0:
        return np.empty(0, dtype=int), 0.0
    chosen = [0]
    distances = np.asarray(p_norm(points - points[0], norm, axis=1))
    while len(chosen) < min(count, total):
        nxt = int(np.argmax(distances))
        if distances[nxt] == 0:
            break
        chosen.append(nxt)
        distances = np.minimum(distances, np.asarray(p_norm(points - points[nxt], norm, axis=1)))
    return np.asarray(chosen, dtype=int), float(distances.max())


__all__ = [
    "AnchoredCover",
    "PointSource",
    "anchored_cover",
    "farthest_first",
    "greedy_packing",
    "grid_cover",
    "sparse_sphere_packing",
]
