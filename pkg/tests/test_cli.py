from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import pytest

from ridgelab.cli import EXIT_ACCEPTANCE, EXIT_OK, EXIT_USAGE, main


def run_json(argv: list[str], capsys: pytest.CaptureFixture[str]) -> tuple[int, Any]:
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def write_rates_csv(path: Path) -> Path:
    lines = ["n,error"] + [f"{n},{n ** -2.0!r}" for n in (16, 32, 64, 128)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_tractability_command(capsys: pytest.CaptureFixture[str]) -> None:
    code, payload = run_json(["tractability", "--alpha", "2", "--p", "1"], capsys)

    assert code == EXIT_OK
    assert payload["label"] == "intractable"
    assert payload["clause"] == 3


def test_config_file_supplies_defaults(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    config = tmp_path / "class.json"
    config.write_text(json.dumps({"alpha": 3.0, "p": 1.0}), encoding="utf-8")

    code, payload = run_json(["tractability", "--config", str(config)], capsys)
    assert code == EXIT_OK
    assert payload["label"] == "weakly tractable"

    code, payload = run_json(["tractability", "--config", str(config), "--alpha", "1.5"], capsys)
    assert payload["label"] == "intractable"

    config.write_text(json.dumps({"colour": "blue"}), encoding="utf-8")
    assert main(["tractability", "--config", str(config)]) == EXIT_USAGE


def test_entropy_command(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["entropy", "--d", "2", "--p", "1", "--k", "1", "2", "--out", str(tmp_path)]
    code, payload = run_json(argv, capsys)

    assert code == EXIT_OK
    assert [item["k"] for item in payload] == [1, 2]
    assert (tmp_path / "entropy.json").exists()
    assert main(["entropy", "--target", "sparse", "--d", "8"]) == EXIT_USAGE


def test_single_run_writes_provenance(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    argv = [
        "run",
        "--sampler",
        "two-step",
        "--alpha",
        "2",
        "--kappa",
        "0.5",
        "--d",
        "2",
        "--n",
        "20",
        "--seed",
        "3",
        "--out",
        str(tmp_path),
    ]
    code, payload = run_json(argv, capsys)

    assert code == EXIT_OK
    assert payload["sampler"] == "two-step"
    assert payload["queries_used"] <= 20
    assert payload["sup_error_estimate"]["value"] <= payload["certified_bound"]
    provenance = json.loads(Path(payload["provenance_file"]).read_text(encoding="utf-8"))
    assert len(provenance["values"]) == payload["queries_used"]


def test_experiment_run_is_deterministic(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    base = ["run", "--alpha", "2", "--kappa", "0.5", "--d", "2", "--schedule", "10", "20", "40"]
    for name in ("first", "second"):
        assert main([*base, "--seed", "5", "--out", str(tmp_path / name)]) == EXIT_OK
    capsys.readouterr()

    first = (tmp_path / "first" / "results.csv").read_bytes()
    assert first == (tmp_path / "second" / "results.csv").read_bytes()
    assert first.startswith(b"n,d,alpha,p,kappa,profile_id,queries,error,seed\n")


def test_run_usage_errors(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["run", "--n", "10", "20"]) == EXIT_USAGE
    assert main(["run", "--n", "10", "--profile", "sine", "--profile", "exp"]) == EXIT_USAGE
    assert main(["simulate"]) == EXIT_USAGE
    assert main(["run", "--sampler", "two-step", "--alpha", "2", "--n", "10"]) == EXIT_USAGE


def test_rates_acceptance(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = write_rates_csv(tmp_path / "errors.csv")

    argv = ["rates", str(path), "--slope-min", "-2.1", "--slope-max", "-1.9"]
    code, payload = run_json(argv, capsys)
    assert code == EXIT_OK
    assert payload["slope"] == pytest.approx(-2.0)
    assert payload["acceptance"]["passed"] is True

    code, payload = run_json(["rates", str(path), "--slope-min", "-1.0"], capsys)
    assert code == EXIT_ACCEPTANCE
    assert payload["acceptance"]["passed"] is False


def test_certify_command(capsys: pytest.CaptureFixture[str]) -> None:
    code, payload = run_json(["certify", "--d", "10", "--n", "8", "--eps", "0.7"], capsys)

    assert code == EXIT_OK
    assert payload["status"] == "passed"
    assert payload["floor"] == pytest.approx(0.245)
    assert main(["certify", "--d", "10"]) == EXIT_USAGE


@pytest.mark.parametrize("seed", ["0", "1", "2", "3"])
def test_certify_with_default_radius(seed: str, capsys: pytest.CaptureFixture[str]) -> None:
    code, payload = run_json(["certify", "--d", "10", "--n", "8", "--seed", seed], capsys)

    assert code == EXIT_OK
    assert payload["status"] == "passed"
    assert payload["identical_outputs"] is True
    assert 0.0 < payload["eps"] < 1.0


@pytest.mark.parametrize(
    "argv",
    [
        ["entropy", "--target", "ball", "--p", "1", "--d", "3", "--k", "2", "4"],
        ["certify", "--d", "10", "--n", "8"],
        ["certify", "--sampler", "taylor", "--alpha", "1.5", "--d", "10", "--n", "21"],
        ["run", "--alpha", "2", "--kappa", "0.5", "--d", "3", "--n", "30", "--profile", "sine"],
        ["rates", "{csv}", "--slope-min", "-2.1"],
        ["tractability", "--alpha", "inf", "--p", "0.5"],
    ],
)
def test_commands_repeat_byte_for_byte(
    argv: list[str], tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    csv_path = str(write_rates_csv(tmp_path / "errors.csv"))
    argv = [csv_path if item == "{csv}" else item for item in argv]

    outputs = []
    for _ in range(2):
        assert main([*argv, "--seed", "4"]) == EXIT_OK
        outputs.append(capsys.readouterr().out)

    assert outputs[0]
    assert outputs[0] == outputs[1]


__all__ = [
    "test_certify_command",
    "test_certify_with_default_radius",
    "test_commands_repeat_byte_for_byte",
    "test_config_file_supplies_defaults",
    "test_entropy_command",
    "test_experiment_run_is_deterministic",
    "test_rates_acceptance",
    "test_run_usage_errors",
    "test_single_run_writes_provenance",
    "test_tractability_command",
]
