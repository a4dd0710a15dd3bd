"""Command-line entry point: ``ridgelab <command> [options]``.

JSON results go to stdout, logs to stderr. Exit codes: 0 on success, 1 on usage or input errors,
2 when an acceptance check (slope range, failed certificate) does not hold.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, NoReturn

from .core.config import get_settings
from .core.exceptions import RidgeLabError
from .core.logging import configure_logging
from .services.adversary.certificate import certify_lower_bound
from .services.adversary.types import CertificateStatus, DirectionSet
from .services.algorithms.samplers import SamplerFactory
from .services.algorithms.types import as_oracle, run_sampler
from .services.classes.types import ClassSpec
from .services.geometry.entropy import entropy_profile
from .services.geometry.types import Target
from .services.harness.audit import sup_error_estimate
from .services.harness.complexity import tractability_classify
from .services.harness.experiment import ExperimentConfig, run_experiment, target_function
from .services.harness.rates import rate_fit, read_pairs_csv
from .utils.serialization import dumps

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ACCEPTANCE = 2


class UsageError(ValueError):
    """Raised instead of argparse's own exit so usage errors map to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _emit(payload: Any, args: argparse.Namespace, filename: str) -> None:
    text = dumps(payload)
    sys.stdout.write(text)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / filename).write_text(text, encoding="utf-8")


def _seed(args: argparse.Namespace) -> int:
    return get_settings().default_seed if args.seed is None else args.seed


def _spec(args: argparse.Namespace) -> ClassSpec:
    return ClassSpec(alpha=args.alpha, p=args.p, kappa=args.kappa, d=args.d)


def cmd_entropy(args: argparse.Namespace) -> int:
    if args.target == "ball":
        target = Target.ball(args.d, args.p)
    elif args.target == "sphere":
        target = Target.sphere(args.d, args.p)
    else:
        if args.m is None:
            msg = "--m is required for the sparse target"
            raise UsageError(msg)
        target = Target.sparse_sphere(args.d, args.m)
    estimates = entropy_profile(target, args.k, args.q, seed=_seed(args))
    payload: Any = [estimate.as_dict() for estimate in estimates]
    if len(payload) == 1:
        payload = payload[0]
    _emit(payload, args, "entropy.json")
    return EXIT_OK


def _experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    if args.config is not None:
        config = ExperimentConfig.load(args.config)
        if args.seed is not None:
            config = config.model_copy(update={"seed": args.seed})
        return config
    return ExperimentConfig(
        sampler=args.sampler,
        alpha=args.alpha,
        p=args.p,
        kappa=args.kappa,
        d=args.d,
        profiles=args.profile or ["sine"],
        schedule=args.schedule or args.n,
        seed=_seed(args),
        workers=args.workers,
    )


def cmd_run(args: argparse.Namespace) -> int:
    if args.config is not None or args.schedule:
        report = run_experiment(_experiment_config(args))
        if args.out is not None:
            report.write(args.out)
        sys.stdout.write(report.to_json())
        return EXIT_OK if report.passed else EXIT_ACCEPTANCE

    if args.n is None or len(args.n) != 1:
        msg = "run needs exactly one --n, or --schedule / --config for an experiment"
        raise UsageError(msg)
    profiles = args.profile or ["sine"]
    if len(profiles) != 1:
        msg = "A single run takes one --profile; use --schedule for a catalog"
        raise UsageError(msg)
    config = _experiment_config(args)
    n = args.n[0]
    sampler = SamplerFactory.create(config.sampler, config.spec(), n)
    f = target_function(config, profiles[0])
    run = run_sampler(sampler, as_oracle(f))
    estimate = sup_error_estimate(f, run.approximant, config.d, seed=config.resolved_seed())
    payload: dict[str, Any] = {
        **sampler.as_dict(),
        "profile_id": profiles[0],
        "direction": f.direction.tolist(),
        "queries_used": run.queries,
        "sup_error_estimate": estimate.as_dict(),
        "approximant": run.approximant.as_dict(),
        "provenance_file": None,
    }
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        provenance = args.out / "provenance.json"
        provenance.write_text(dumps(run.approximant.provenance.as_dict()), encoding="utf-8")
        payload["provenance_file"] = str(provenance)
    _emit(payload, args, "run.json")
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    if args.n is None:
        msg = "certify needs --n"
        raise UsageError(msg)
    spec = _spec(args)
    seed = _seed(args)
    sampler = SamplerFactory.create(args.sampler, spec, args.n)
    dirs = DirectionSet.parse(args.dirs, spec.d, spec.p, seed=seed)
    certificate = certify_lower_bound(sampler, dirs, args.eps, tol=args.tol, seed=seed)
    _emit(certificate.as_dict(), args, "certificate.json")
    return EXIT_ACCEPTANCE if certificate.status is CertificateStatus.FAILED else EXIT_OK


def cmd_rates(args: argparse.Namespace) -> int:
    pairs = read_pairs_csv(args.csv, x_column=args.x_column, y_column=args.y_column)
    if args.offset:
        pairs = [(n - args.offset, error) for n, error in pairs if n > args.offset]
    fit = rate_fit(pairs)
    payload = fit.as_dict()
    code = EXIT_OK
    if args.slope_min is not None or args.slope_max is not None:
        low = -float("inf") if args.slope_min is None else args.slope_min
        high = float("inf") if args.slope_max is None else args.slope_max
        passed = fit.within(low, high)
        payload["acceptance"] = {"slope_min": low, "slope_max": high, "passed": passed}
        code = EXIT_OK if passed else EXIT_ACCEPTANCE
    _emit(payload, args, "rates.json")
    return code


def cmd_tractability(args: argparse.Namespace) -> int:
    verdict = tractability_classify(args.alpha, args.p, args.kappa)
    _emit(verdict.as_dict(), args, "tractability.json")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("ridgelab.main:app", host=args.host, port=args.port, log_config=None)
    return EXIT_OK


def _class_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=2.0, help="smoothness; 'inf' for C-infinity")
    parser.add_argument("--p", type=float, default=2.0, help="direction exponent in (0, 2]")
    parser.add_argument("--kappa", type=float, default=0.0, help="derivative floor in [0, 1]")
    parser.add_argument("--d", type=int, default=2, help="dimension")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed (default RIDGELAB_SEED)")
    common.add_argument("--out", type=Path, default=None, help="directory for result files")
    common.add_argument("--config", type=Path, default=None, help="JSON config file")
    common.add_argument("--log-level", default=None, help="log level (default LOG_LEVEL)")

    parser = _Parser(prog="ridgelab", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)
    subparsers: dict[str, argparse.ArgumentParser] = {}

    def add(
        name: str, handler: Callable[[argparse.Namespace], int], help_text: str
    ) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        subparsers[name] = sub
        return sub

    entropy = add("entropy", cmd_entropy, "bracket entropy numbers of balls and spheres")
    entropy.add_argument("--target", choices=("ball", "sphere", "sparse"), default="ball")
    entropy.add_argument("--p", type=float, default=2.0)
    entropy.add_argument("--q", type=float, default=2.0)
    entropy.add_argument("--d", type=int, default=2)
    entropy.add_argument("--k", type=int, nargs="+", default=[1])
    entropy.add_argument("--m", type=int, default=None, help="sparsity of the sparse target")

    run = add("run", cmd_run, "run a sampler on a catalog profile or a budget schedule")
    run.add_argument("--sampler", choices=SamplerFactory.names, default="two-step")
    _class_arguments(run)
    run.add_argument("--n", type=int, nargs="+", default=None, help="query budget")
    run.add_argument("--schedule", type=int, nargs="+", default=None, help="budget schedule")
    run.add_argument("--profile", action="append", default=None, help="catalog profile id")
    run.add_argument("--workers", type=int, default=None)

    certify = add("certify", cmd_certify, "certify a worst-case error floor for a sampler")
    certify.add_argument("--sampler", choices=SamplerFactory.names, default="cover")
    _class_arguments(certify)
    certify.set_defaults(alpha=1.0)
    certify.add_argument("--n", type=int, default=None, help="query budget")
    certify.add_argument("--dirs", default="canonical")
    certify.add_argument("--eps", type=float, default=None)
    certify.add_argument("--tol", type=float, default=1e-3)

    rates = add("rates", cmd_rates, "fit an empirical rate to (n, error) pairs from a CSV")
    rates.add_argument("csv", type=Path)
    rates.add_argument("--x-column", default="n")
    rates.add_argument("--y-column", default="error")
    rates.add_argument("--offset", type=int, default=0, help="fit against n - offset")
    rates.add_argument("--slope-min", type=float, default=None)
    rates.add_argument("--slope-max", type=float, default=None)

    tractability = add("tractability", cmd_tractability, "classify (alpha, p, kappa)")
    _class_arguments(tractability)

    serve = add("serve", cmd_serve, "serve the analysis API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser, subparsers


def _apply_config_defaults(
    args: argparse.Namespace, subparsers: dict[str, argparse.ArgumentParser]
) -> None:
    """Seed a non-``run`` command's options from its JSON config; explicit flags still win."""

    data = json.loads(args.config.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        msg = f"{args.config} must hold a JSON object"
        raise UsageError(msg)
    defaults = {key.replace("-", "_"): value for key, value in data.items()}
    unknown = sorted(key for key in defaults if not hasattr(args, key))
    if unknown:
        msg = f"Unknown keys in {args.config}: {', '.join(unknown)}"
        raise UsageError(msg)
    subparsers[args.command].set_defaults(**defaults)


def main(argv: Sequence[str] | None = None) -> int:
    parser, subparsers = build_parser()
    try:
        args = parser.parse_args(argv)
        configure_logging(args.log_level or get_settings().log_level)
        if args.config is not None and args.command != "run":
            _apply_config_defaults(args, subparsers)
            args = parser.parse_args(argv)
        return args.handler(args)
    except (ValueError, RidgeLabError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
