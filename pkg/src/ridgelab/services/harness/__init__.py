"""Error audits, rate fits, complexity formulas and tractability verdicts.

Experiment orchestration lives in :mod:`ridgelab.services.harness.experiment`; it is not imported
here because the adversary package depends on the audit.
"""

from .audit import ErrorEstimate, sobol_ball, sup_error_estimate
from .complexity import (
    BoundConstants,
    ComplexityBound,
    TractabilityLabel,
    TractabilityVerdict,
    complexity_lower,
    complexity_upper,
    entropy_sampling_upper,
    lower_sampling_reference,
    quasi_polynomial_bound,
    tractability_classify,
    two_step_reference,
    upper_sampling_reference,
    weak_tractability_ratio,
)
from .rates import RateFit, rate_fit, read_pairs_csv

__all__ = [
    "BoundConstants",
    "ComplexityBound",
    "ErrorEstimate",
    "RateFit",
    "TractabilityLabel",
    "TractabilityVerdict",
    "complexity_lower",
    "complexity_upper",
    "entropy_sampling_upper",
    "lower_sampling_reference",
    "quasi_polynomial_bound",
    "rate_fit",
    "read_pairs_csv",
    "sobol_ball",
    "sup_error_estimate",
    "tractability_classify",
    "two_step_reference",
    "upper_sampling_reference",
    "weak_tractability_ratio",
]
