"""Ridge function classes, catalog profiles and membership checks."""

from .bump import bump
from .catalog import (
    GAMMA,
    INTERVAL,
    ProfileFactory,
    ProfileKind,
    bump_centres,
    bump_scale,
    catalog_profile,
    fooling_normalizer,
    fooling_profile,
    psi_profile,
    sine_with_bumps,
)
from .membership import (
    MembershipReport,
    jet_membership_check,
    membership_check,
    seminorm_estimate,
)
from .types import ClassSpec, Profile, RidgeFunction, ridge_eval, strict_floor

__all__ = [
    "GAMMA",
    "INTERVAL",
    "ClassSpec",
    "MembershipReport",
    "Profile",
    "ProfileFactory",
    "ProfileKind",
    "RidgeFunction",
    "bump",
    "bump_centres",
    "bump_scale",
    "catalog_profile",
    "fooling_normalizer",
    "fooling_profile",
    "jet_membership_check",
    "membership_check",
    "psi_profile",
    "ridge_eval",
    "seminorm_estimate",
    "sine_with_bumps",
    "strict_floor",
]
