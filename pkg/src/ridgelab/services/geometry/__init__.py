"""Norms, covers, packings and entropy numbers of finite-dimensional sets."""

from .entropy import (
    entropy_estimate,
    entropy_profile,
    exact_finite_entropy,
    finite_covering_number,
    finite_packing_number,
    ridge_entropy_bracket,
    ridge_entropy_threshold,
    schuett_bound,
    sphere_entropy_bound,
)
from .nets import (
    AnchoredCover,
    anchored_cover,
    farthest_first,
    greedy_packing,
    grid_cover,
    sparse_sphere_packing,
)
from .norms import NormSpec, as_norm, ensure_in_domain, normalize, p_norm
from .types import EntropyEstimate, Net, NetRole, Target, TargetKind

__all__ = [
    "AnchoredCover",
    "EntropyEstimate",
    "Net",
    "NetRole",
    "NormSpec",
    "Target",
    "TargetKind",
    "anchored_cover",
    "as_norm",
    "ensure_in_domain",
    "entropy_estimate",
    "entropy_profile",
    "exact_finite_entropy",
    "farthest_first",
    "finite_covering_number",
    "finite_packing_number",
    "greedy_packing",
    "grid_cover",
    "normalize",
    "p_norm",
    "ridge_entropy_bracket",
    "ridge_entropy_threshold",
    "schuett_bound",
    "sparse_sphere_packing",
    "sphere_entropy_bound",
]
