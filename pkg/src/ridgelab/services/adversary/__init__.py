"""Lower-bound constructions: fooling functions, bump families and certificates."""

from .bumps import BumpFamily, BumpFunction, lipschitz_bump_adversary, radial_bump_scale
from .certificate import certify_lower_bound, default_certificate_eps
from .fooling import (
    UnivariateFooling,
    fooling_floor,
    fooling_ridge,
    orthogonal_direction,
    qualifying_directions,
    univariate_fooling,
)
from .types import Certificate, CertificateStatus, DirectionKind, DirectionSet

__all__ = [
    "BumpFamily",
    "BumpFunction",
    "Certificate",
    "CertificateStatus",
    "DirectionKind",
    "DirectionSet",
    "UnivariateFooling",
    "certify_lower_bound",
    "default_certificate_eps",
    "fooling_floor",
    "fooling_ridge",
    "lipschitz_bump_adversary",
    "orthogonal_direction",
    "qualifying_directions",
    "radial_bump_scale",
    "univariate_fooling",
]
