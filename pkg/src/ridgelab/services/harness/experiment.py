"""Experiment orchestration: budget schedules, catalog worst-case errors and report files."""

from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ...core.config import get_settings
from ...utils.seeding import derive_seed, spawn_rng, stable_key
from ...utils.serialization import dumps
from ..adversary.certificate import certify_lower_bound
from ..adversary.types import DirectionSet
from ..algorithms.samplers import SamplerFactory
from ..algorithms.types import AdaptiveSampler, as_oracle, run_sampler
from ..classes.catalog import ProfileFactory
from ..classes.types import ClassSpec, RidgeFunction
from ..geometry.norms import sample_sphere
from .audit import sup_error_estimate
from .complexity import (
    entropy_sampling_upper,
    lower_sampling_reference,
    tractability_classify,
    two_step_reference,
    upper_sampling_reference,
)
from .rates import MIN_PAIRS, RateFit, rate_fit

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("n", "d", "alpha", "p", "kappa", "profile_id", "queries", "error", "seed")
RESULTS_FILE = "results.csv"
SUMMARY_FILE = "summary.json"


class AcceptanceConfig(BaseModel):
    """Slope range the fitted rate must fall into."""

    model_config = ConfigDict(extra="forbid")

    slope_min: float
    slope_max: float

    @model_validator(mode="after")
    def _ordered(self) -> AcceptanceConfig:
        if self.slope_min > self.slope_max:
            msg = "slope_min must not exceed slope_max"
            raise ValueError(msg)
        return self


class ExperimentConfig(BaseModel):
    """A sampler, a class, a profile catalog and a budget schedule."""

    model_config = ConfigDict(extra="forbid")

    sampler: str = "two-step"
    alpha: float = 2.0
    p: float = Field(default=2.0, gt=0.0, le=2.0)
    kappa: float = Field(default=0.0, ge=0.0, le=1.0)
    d: int = Field(default=2, ge=1)
    profiles: list[str] = Field(default_factory=lambda: ["sine"], min_length=1)
    schedule: list[int] = Field(min_length=1)
    seed: int | None = None
    direction: Literal["random", "e1"] = "random"
    fit_against: Literal["n", "n-d"] = "n-d"
    grid_budget: int | None = Field(default=None, ge=1)
    random_budget: int | None = Field(default=None, ge=1)
    workers: int | None = Field(default=None, ge=1)
    certify: str | None = None
    acceptance: AcceptanceConfig | None = None

    @field_validator("alpha", mode="before")
    @classmethod
    def _parse_alpha(cls, value: Any) -> Any:
        if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo"):
            return math.inf
        return value

    @field_validator("schedule")
    @classmethod
    def _positive_schedule(cls, value: list[int]) -> list[int]:
        if any(n < 1 for n in value):
            msg = "schedule entries must be positive budgets"
            raise ValueError(msg)
        return sorted(set(value))

    @field_validator("sampler")
    @classmethod
    def _known_sampler(cls, value: str) -> str:
        normalized = value.strip().lower()
        if normalized not in SamplerFactory.names:
            msg = f"unknown sampler '{value}'"
            raise ValueError(msg)
        return normalized

    @model_validator(mode="after")
    def _valid_class(self) -> ExperimentConfig:
        self.spec()
        return self

    @classmethod
    def load(cls, path: Path) -> ExperimentConfig:
        return cls.model_validate_json(path.read_text(encoding="utf-8"))

    def spec(self) -> ClassSpec:
        return ClassSpec(alpha=self.alpha, p=self.p, kappa=self.kappa, d=self.d)

    def resolved_seed(self) -> int:
        return get_settings().default_seed if self.seed is None else self.seed


@dataclass(slots=True)
class ExperimentRow:
    n: int
    d: int
    alpha: float
    p: float
    kappa: float
    profile_id: str
    queries: int
    error: float
    seed: int

    def values(self) -> list[str]:
        return [
            str(self.n),
            str(self.d),
            _number(self.alpha),
            _number(self.p),
            _number(self.kappa),
            self.profile_id,
            str(self.queries),
            _number(self.error),
            str(self.seed),
        ]


@dataclass(slots=True)
class ExperimentReport:
    config: ExperimentConfig
    rows: list[ExperimentRow]
    fit: RateFit | None = None
    references: dict[str, dict[str, float | None]] = field(default_factory=dict)
    verdict: dict[str, Any] = field(default_factory=dict)
    certificates: list[dict[str, Any]] = field(default_factory=list)
    acceptance: dict[str, Any] | None = None

    @property
    def passed(self) -> bool:
        return self.acceptance is None or bool(self.acceptance["passed"])

    def worst_errors(self) -> dict[int, float]:
        worst: dict[int, float] = {}
        for row in self.rows:
            worst[row.n] = max(worst.get(row.n, 0.0), row.error)
        return worst

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(row.values())
        return buffer.getvalue()

    def summary(self) -> dict[str, Any]:
        return {
            "config": self.config.model_dump(),
            "seed": self.config.resolved_seed(),
            "worst_case": "catalog worst-case",
            "worst_errors": {str(n): error for n, error in sorted(self.worst_errors().items())},
            "fit": self.fit.as_dict() if self.fit else None,
            "references": self.references,
            "tractability": self.verdict,
            "certificates": self.certificates,
            "acceptance": self.acceptance,
        }

    def to_json(self) -> str:
        return dumps(self.summary())

    def write(self, out_dir: Path) -> tuple[Path, Path]:
        out_dir.mkdir(parents=True, exist_ok=True)
        results = out_dir / RESULTS_FILE
        summary = out_dir / SUMMARY_FILE
        results.write_text(self.to_csv(), encoding="utf-8")
        summary.write_text(self.to_json(), encoding="utf-8")
        logger.info("Wrote %s and %s", results, summary)
        return results, summary


def _number(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".17g")


def target_function(config: ExperimentConfig, profile_id: str) -> RidgeFunction:
    """The ridge function for one catalog profile, with a seeded direction on the p-sphere."""

    spec = config.spec()
    profile = ProfileFactory.create(profile_id, spec)
    if config.direction == "e1":
        direction = np.zeros(spec.d)
        direction[0] = 1.0
    else:
        rng = spawn_rng(config.resolved_seed(), stable_key("direction"), stable_key(profile_id))
        direction = sample_sphere(rng, 1, spec.d, spec.p)[0]
    return RidgeFunction(direction, profile, spec.p)


def _run_cell(
    config: ExperimentConfig, sampler: AdaptiveSampler, n: int, profile_id: str
) -> ExperimentRow:
    seed = config.resolved_seed()
    f = target_function(config, profile_id)
    run = run_sampler(sampler, as_oracle(f))
    estimate = sup_error_estimate(
        f,
        run.approximant,
        config.d,
        config.grid_budget,
        derive_seed(seed, stable_key(profile_id), n),
        random_budget=config.random_budget,
    )
    logger.debug("Cell n=%d profile=%s error=%.6g", n, profile_id, estimate.value)
    return ExperimentRow(
        n=n,
        d=config.d,
        alpha=config.alpha,
        p=config.p,
        kappa=config.kappa,
        profile_id=profile_id,
        queries=run.queries,
        error=estimate.value,
        seed=seed,
    )


def _references(config: ExperimentConfig, n: int) -> dict[str, float | None]:
    if math.isinf(config.alpha):
        return {"two_step": None, "upper": None, "lower": None, "entropy_upper": None}
    settings = get_settings()
    return {
        "two_step": two_step_reference(n, config.d, config.alpha, settings.bound_c_upper),
        "upper": upper_sampling_reference(
            n, config.d, config.alpha, config.p, settings.bound_c_upper
        ),
        "lower": lower_sampling_reference(
            n, config.d, config.alpha, config.p, settings.bound_c_lower
        ),
        "entropy_upper": entropy_sampling_upper(n, config.d, config.alpha, config.p),
    }


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run every (n, profile) cell, fit the rate of the catalog worst case and attach references."""

    spec = config.spec()
    samplers = {n: SamplerFactory.create(config.sampler, spec, n) for n in config.schedule}
    cells = [(n, profile_id) for n in config.schedule for profile_id in sorted(config.profiles)]
    workers = config.workers or get_settings().workers
    logger.info(
        "Running %d cells of sampler %s (d=%d, alpha=%s) on %d worker(s)",
        len(cells),
        config.sampler,
        config.d,
        config.alpha,
        workers,
    )
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [
                executor.submit(_run_cell, config, samplers[n], n, profile_id)
                for n, profile_id in cells
            ]
            rows = [future.result() for future in futures]
    else:
        rows = [_run_cell(config, samplers[n], n, profile_id) for n, profile_id in cells]
    rows.sort(key=lambda row: (row.n, row.profile_id))

    report = ExperimentReport(config=config, rows=rows)
    report.verdict = tractability_classify(config.alpha, config.p, config.kappa).as_dict()
    report.references = {str(n): _references(config, n) for n in config.schedule}

    offset = config.d if config.fit_against == "n-d" else 0
    pairs = [(n - offset, error) for n, error in report.worst_errors().items() if n > offset]
    positive = [pair for pair in pairs if pair[1] > 0]
    if len(positive) >= MIN_PAIRS:
        report.fit = rate_fit(positive)

    if config.certify:
        dirs = DirectionSet.parse(config.certify, spec.d, spec.p, seed=config.resolved_seed())
        for n in config.schedule:
            certificate = certify_lower_bound(samplers[n], dirs, seed=config.resolved_seed())
            report.certificates.append({"n": n, **certificate.as_dict()})

    if config.acceptance is not None:
        passed = report.fit is not None and report.fit.within(
            config.acceptance.slope_min, config.acceptance.slope_max
        )
        report.acceptance = {
            "slope_min": config.acceptance.slope_min,
            "slope_max": config.acceptance.slope_max,
            "slope": report.fit.slope if report.fit else None,
            "passed": passed,
        }
    return report


__all__ = [
    "CSV_COLUMNS",
    "AcceptanceConfig",
    "ExperimentConfig",
    "ExperimentReport",
    "ExperimentRow",
    "run_experiment",
    "target_function",
]
