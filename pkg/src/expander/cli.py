"""Command line interface.

Config comes from an optional flat ``key=value`` file plus flag overrides
(flags win).  Exit codes: 0 success, 2 invalid config, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ExpanderError, NumericalFailure
from .expansion import MethodKind
from .harness import ExperimentConfig, run_experiment, validate_config
from .models import MODEL_NAMES

_MODEL_FORMULAS = {
    "linear": "A_ii = 3000 - 0.6 i",
    "ellipsoidal": "A_ii = b (1 - (a + c (i/n)^2))^(1/2) - H",
    "polynomial": "A_ii = c / ((i + s)^(1/2) + m)",
}

_FLOAT_KEYS = ("G", "a", "b", "c", "H", "poly_c", "poly_s", "poly_m", "rank_cutoff")
_INT_KEYS = ("n", "d", "r", "q", "seed")
_BOOL_KEYS = ("emit_vt_bound", "emit_kt_bound")


def _parse_config_file(path) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key] = value
    return out


def _coerce(key: str, value: str):
    if key in _INT_KEYS:
        return int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    if key in _BOOL_KEYS:
        if value.lower() in ("1", "true", "yes"):
            return True
        if value.lower() in ("0", "false", "no"):
            return False
        raise ValueError(f"{key}: expected a boolean, got {value!r}")
    if key == "p":
        return tuple(int(s) for s in value.split(","))
    if key == "methods":
        return tuple(MethodKind.from_label(s.strip()) for s in value.split(","))
    if key in ("model", "norm", "out"):
        return value
    raise ValueError(f"unknown config key {key!r}")


def _build_config(args) -> ExperimentConfig:
    settings = {}
    if args.config:
        for key, value in _parse_config_file(args.config).items():
            settings[key] = _coerce(key, value)
    for key in (*_INT_KEYS, *_FLOAT_KEYS, *_BOOL_KEYS, "p", "methods", "model", "norm", "out"):
        flag = getattr(args, key, None)
        if flag is not None:
            settings[key] = _coerce(key, flag) if isinstance(flag, str) else flag
    if "p" in settings:
        settings["p_list"] = settings.pop("p")
    return ExperimentConfig(**settings)


def _add_config_flags(parser):
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--n", type=int)
    parser.add_argument("--d", type=int)
    parser.add_argument("--r", type=int)
    parser.add_argument("--p", help="comma-separated list of oversampling cut indices")
    parser.add_argument("--q", type=int)
    parser.add_argument("--model", choices=MODEL_NAMES)
    parser.add_argument("--G", type=float)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--methods", help="comma-separated: " + ",".join(m.value for m in MethodKind))
    parser.add_argument("--norm", choices=("op", "fro"))
    parser.add_argument("--out", help="output directory for run.csv and report.json")
    for key in _FLOAT_KEYS:
        if key != "G":
            parser.add_argument(f"--{key}", type=float)
    for key in _BOOL_KEYS:
        parser.add_argument(f"--{key}", choices=("true", "false"))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="expander", description="Block subspace expansion experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment and write run.csv / report.json")
    _add_config_flags(run_p)

    val_p = sub.add_parser("validate", help="check a config without running")
    _add_config_flags(val_p)

    models_p = sub.add_parser("models", help="describe available spectrum models")
    models_p.add_argument("--list", action="store_true")

    args = parser.parse_args(argv)

    if args.command == "models":
        for name in MODEL_NAMES:
            print(f"{name}: {_MODEL_FORMULAS[name]}")
        return 0

    try:
        config = _build_config(args)
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    violations = validate_config(config)
    if args.command == "validate":
        for message in violations:
            print(message)
        if not violations:
            print("config ok")
        return 2 if violations else 0

    if violations:
        for message in violations:
            print(message, file=sys.stderr)
        return 2

    try:
        report = run_experiment(config)
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except ExpanderError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3

    for label, message in report.failures.items():
        print(f"method {label} failed: {message}", file=sys.stderr)
    if config.out:
        print(f"wrote {config.out}/run.csv and {config.out}/report.json")
    return 3 if report.failures and not report.trajectories else 0


if __name__ == "__main__":
    raise SystemExit(main())
