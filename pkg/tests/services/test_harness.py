from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from ridgelab.services.classes.catalog import catalog_profile
from ridgelab.services.classes.types import ClassSpec, RidgeFunction
from ridgelab.services.harness.audit import sobol_ball, sup_error_estimate
from ridgelab.services.harness.complexity import (
    TractabilityLabel,
    complexity_lower,
    complexity_upper,
    lower_sampling_reference,
    tractability_classify,
    two_step_reference,
    upper_sampling_reference,
    weak_tractability_ratio,
)
from ridgelab.services.harness.experiment import (
    CSV_COLUMNS,
    ExperimentConfig,
    run_experiment,
)
from ridgelab.services.harness.rates import rate_fit, read_pairs_csv

BUDGETS = [16, 32, 64, 128, 256, 512]


def make_config(**overrides: object) -> ExperimentConfig:
    values: dict[str, object] = {
        "sampler": "two-step",
        "alpha": 2.0,
        "kappa": 0.5,
        "d": 2,
        "profiles": ["sine", "linear"],
        "schedule": [10, 20, 40],
        "seed": 1,
        "grid_budget": 256,
        "random_budget": 256,
    }
    values.update(overrides)
    return ExperimentConfig(**values)


def test_sobol_points_lie_in_ball() -> None:
    points = sobol_ball(100, 3, 0)

    assert points.shape == (100, 3)
    assert np.linalg.norm(points, axis=1).max() <= 1.0


def test_audit_of_identical_functions_is_zero() -> None:
    spec = ClassSpec(alpha=1.0, d=3)
    f = RidgeFunction(np.array([0.0, 0.6, 0.8]), catalog_profile("sine", spec))

    assert sup_error_estimate(f, f, 3, 256, 0, random_budget=256).value == 0.0


def test_audit_finds_linear_peak() -> None:
    spec = ClassSpec(alpha=1.0, d=2)
    f = RidgeFunction(np.array([0.6, 0.8]), catalog_profile("linear", spec))
    zero = RidgeFunction(np.array([1.0, 0.0]), catalog_profile("zero", spec))

    estimate = sup_error_estimate(f, zero, 2, 256, 0, random_budget=256)

    assert estimate.value == pytest.approx(1.0, abs=1e-3)
    assert estimate.method["ridge_line"] > 0
    assert estimate.as_dict()["kind"] == "audited lower estimate"


def test_rate_fit_of_exact_power() -> None:
    fit = rate_fit([(n, n**-2.0) for n in BUDGETS])

    assert fit.slope == pytest.approx(-2.0)
    assert fit.residual == pytest.approx(0.0, abs=1e-12)
    assert fit.within(-2.1, -1.9)


def test_rate_fit_of_constant_and_perturbed_errors() -> None:
    assert rate_fit([(n, 0.3) for n in BUDGETS]).slope == pytest.approx(0.0, abs=1e-12)

    perturbed = rate_fit([(n, n**-2.0 * (1.0 + 0.05 * math.sin(n))) for n in BUDGETS])
    assert perturbed.slope == pytest.approx(-2.0, abs=0.1)


def test_rate_fit_needs_three_positive_pairs() -> None:
    with pytest.raises(ValueError):
        rate_fit([(16, 0.1), (32, 0.05), (64, 0.0)])


def test_read_pairs_keeps_worst_error(tmp_path: Path) -> None:
    path = tmp_path / "results.csv"
    path.write_text("n,error,profile_id\n10,0.1,a\n10,0.3,b\n20,0.05,a\n", encoding="utf-8")

    assert read_pairs_csv(path) == [(10.0, 0.3), (20.0, 0.05)]
    with pytest.raises(ValueError):
        read_pairs_csv(path, y_column="gap")


def test_complexity_upper_first_branch() -> None:
    bound = complexity_upper(1.0, 16, 2.0, 1.0)

    assert bound.value == pytest.approx(5.0)
    assert bound.branch == "log d"


def test_complexity_upper_is_monotone_in_eps() -> None:
    grid = np.geomspace(1e-3, 1.0, 60)
    values = [complexity_upper(float(eps), 64, 3.0, 0.8).value for eps in grid]

    assert all(a >= b - 1e-9 for a, b in zip(values, values[1:]))


def test_complexity_lower_window() -> None:
    bound = complexity_lower(0.1, 16, 1.0, 1.0)
    assert bound.value == pytest.approx(101.0)
    assert bound.binding

    outside = complexity_lower(0.01, 16, 1.0, 1.0)
    assert not outside.binding
    assert outside.branch == "outside window"


def test_complexity_rejects_euclidean_directions() -> None:
    with pytest.raises(ValueError):
        complexity_upper(0.1, 16, 2.0, 2.0)
    with pytest.raises(ValueError):
        complexity_lower(0.1, 1, 2.0, 1.0)


def test_reference_curves() -> None:
    assert two_step_reference(12, 2, 2.0) == pytest.approx(0.01)
    assert two_step_reference(2, 2, 2.0) == 1.0
    assert lower_sampling_reference(10, 1, 2.0, 1.0) == pytest.approx(0.01)
    assert upper_sampling_reference(4, 8, 2.0, 1.0) == 1.0


@pytest.mark.parametrize(
    ("alpha", "p", "kappa", "label"),
    [
        (2.0, 2.0, 0.0, TractabilityLabel.CURSE),
        (math.inf, 2.0, 0.0, TractabilityLabel.QUASI_POLYNOMIAL),
        (1.5, 1.0, 0.0, TractabilityLabel.INTRACTABLE),
        (2.0, 0.5, 0.0, TractabilityLabel.UNKNOWN_GAP),
        (3.0, 1.0, 0.0, TractabilityLabel.WEAKLY_TRACTABLE),
        (2.0, 2.0, 0.5, TractabilityLabel.POLYNOMIAL),
    ],
)
def test_tractability_classify(
    alpha: float, p: float, kappa: float, label: TractabilityLabel
) -> None:
    verdict = tractability_classify(alpha, p, kappa)

    assert verdict.label is label
    assert verdict.curse_excluded == (p < 2)


def test_tractability_rejects_invalid_classes() -> None:
    with pytest.raises(ValueError):
        tractability_classify(1.0, 2.0, 0.5)
    with pytest.raises(ValueError):
        tractability_classify(2.0, 3.0)


def test_weakly_tractable_ratio_vanishes_along_diagonal() -> None:
    assert tractability_classify(4.0, 1.0).label is TractabilityLabel.WEAKLY_TRACTABLE
    ratios = []
    for exponent in range(4, 11):
        d = 2**exponent
        eps = 1.0 / d
        ratios.append(weak_tractability_ratio(complexity_upper(eps, d, 4.0, 1.0).value, eps, d))

    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < 0.2


def test_experiment_config_validation() -> None:
    assert make_config(schedule=[40, 10, 40]).schedule == [10, 40]
    assert make_config(sampler="taylor-zero", alpha="inf", kappa=0.0).alpha == math.inf

    with pytest.raises(ValidationError):
        make_config(schedule=[])
    with pytest.raises(ValidationError):
        make_config(sampler="simplex")
    with pytest.raises(ValidationError):
        make_config(alpha=1.0)
    with pytest.raises(ValidationError):
        make_config(colour="blue")
    with pytest.raises(ValidationError):
        make_config(acceptance={"slope_min": 1.0, "slope_max": 0.0})


def test_experiment_on_zero_profile() -> None:
    config = make_config(
        sampler="cover", alpha=1.0, kappa=0.0, profiles=["zero"], schedule=[4, 8, 16]
    )
    report = run_experiment(config.model_copy(update={"certify": "canonical"}))

    assert [row.error for row in report.rows] == [0.0, 0.0, 0.0]
    assert report.fit is None
    assert report.verdict["label"] == "curse"
    assert [certificate["n"] for certificate in report.certificates] == [4, 8, 16]
    assert report.to_csv().splitlines()[0] == ",".join(CSV_COLUMNS)


def test_experiment_is_deterministic(tmp_path: Path) -> None:
    config = make_config()
    first = run_experiment(config)
    second = run_experiment(config.model_copy(update={"workers": 2}))

    assert first.to_csv() == second.to_csv()
    assert len(first.rows) == 6
    assert first.fit is not None
    assert first.fit.slope < 0

    results, summary = first.write(tmp_path)
    assert results.read_text(encoding="utf-8") == first.to_csv()
    payload = json.loads(summary.read_text(encoding="utf-8"))
    assert payload["worst_case"] == "catalog worst-case"
    assert set(payload["references"]) == {"10", "20", "40"}
    assert payload["references"]["10"]["two_step"] == pytest.approx(8.0**-2.0)


def test_experiment_acceptance() -> None:
    loose = run_experiment(make_config(acceptance={"slope_min": -100.0, "slope_max": 100.0}))
    strict = run_experiment(make_config(acceptance={"slope_min": 5.0, "slope_max": 6.0}))

    assert loose.passed
    assert not strict.passed
    assert strict.acceptance is not None
    assert strict.acceptance["slope"] == pytest.approx(loose.fit.slope)



def test_two_step_rate_in_dimension_eight() -> None:
    config = ExperimentConfig(
        sampler="two-step",
        alpha=2.0,
        kappa=1.0,
        d=8,
        profiles=["sine", "sine_cubic"],
        schedule=[8 + m for m in BUDGETS],
        seed=0,
        acceptance={"slope_min": -2.3, "slope_max": -1.7},
    )

    report = run_experiment(config)

    assert config.fit_against == "n-d"
    assert report.fit is not None
    assert report.fit.ns == [float(m) for m in BUDGETS]
    assert -2.3 <= report.fit.slope <= -1.7
    assert report.passed

__all__ = [
    "test_audit_finds_linear_peak",
    "test_audit_of_identical_functions_is_zero",
    "test_complexity_lower_window",
    "test_complexity_rejects_euclidean_directions",
    "test_complexity_upper_first_branch",
    "test_complexity_upper_is_monotone_in_eps",
    "test_experiment_acceptance",
    "test_experiment_config_validation",
    "test_experiment_is_deterministic",
    "test_experiment_on_zero_profile",
    "test_rate_fit_needs_three_positive_pairs",
    "test_rate_fit_of_constant_and_perturbed_errors",
    "test_rate_fit_of_exact_power",
    "test_read_pairs_keeps_worst_error",
    "test_reference_curves",
    "test_sobol_points_lie_in_ball",
    "test_tractability_classify",
    "test_tractability_rejects_invalid_classes",
    "test_two_step_rate_in_dimension_eight",
    "test_weakly_tractable_ratio_vanishes_along_diagonal",
]
