"""Experiment runner: build a model, run methods from a shared start subspace,
attach bound curves, and serialize everything to CSV and JSON.

The CSV is deterministic for a fixed config and seed (wall times live in the
JSON report only, which is why the ``elapsed_s`` column is left empty).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, asdict

import numpy as np

from . import __version__
from .bounds import BoundCurve, construct_Hp, kt_bound_curve, vt_bound_curve
from .errors import NumericalFailure
from .expansion import ExpansionTrajectory, MethodKind, run_method
from .linalg import RankTolerance, principal_angles, tangent_norm
from .models import (
    MODEL_NAMES,
    HermitianOperator,
    ModelParams,
    build_spectrum,
    gaussian_subspace,
    target_subspace,
)

__all__ = [
    "ExperimentConfig",
    "RunReport",
    "validate_config",
    "run_experiment",
    "emit_csv",
    "emit_json",
    "CSV_HEADER",
]

CSV_HEADER = "kind,label,t,dim,theta_max,theta_all,tan_norm,elapsed_s"

ALL_METHODS = tuple(MethodKind)


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 500
    d: int = 5
    r: int = 20
    p_list: tuple = (15,)
    q: int = 30
    model: str = "linear"
    G: float = 0.0
    seed: int = 0
    methods: tuple = ALL_METHODS
    norm: str = "op"
    out: str | None = None
    emit_vt_bound: bool = True
    emit_kt_bound: bool = True
    rank_cutoff: float = 1e-10
    # ellipsoidal model constants
    a: float = 0.1
    b: float = 100.0
    c: float = 0.8
    H: float = 0.0
    # polynomial model constants
    poly_c: float = 1000.0
    poly_s: float = 200.0
    poly_m: float = 50.0

    def model_params(self) -> ModelParams:
        return ModelParams(
            model=self.model, n=self.n, d=self.d, G=self.G,
            a=self.a, b=self.b, c=self.c, H=self.H,
            poly_c=self.poly_c, poly_s=self.poly_s, poly_m=self.poly_m,
        )

    def tol(self) -> RankTolerance:
        return RankTolerance(self.rank_cutoff)


def validate_config(config: ExperimentConfig) -> list:
    """Empty list iff all config invariants hold; messages name the violation."""
    v = []
    if config.n < 1:
        v.append("n must be >= 1")
    if not 1 <= config.d:
        v.append("d must be >= 1")
    if config.d > config.r:
        v.append("d <= r violated")
    if config.r > config.n:
        v.append("r <= n violated")
    for p in config.p_list:
        if not config.d <= p:
            v.append(f"d <= p violated for p={p}")
        if not p <= config.r:
            v.append(f"p <= r violated for p={p}")
    if config.q < 0:
        v.append("q must be >= 0")
    if not config.methods:
        v.append("methods must be nonempty")
    if config.model not in MODEL_NAMES:
        v.append(f"unknown model {config.model!r}")
    if config.norm not in ("op", "fro"):
        v.append("norm must be 'op' or 'fro'")
    if config.G < 0:
        v.append("G must be >= 0")
    if not 0.0 < config.rank_cutoff < 1.0:
        v.append("rank_cutoff must lie in (0, 1)")
    return v


@dataclass
class RunReport:
    config: dict
    trajectories: dict = field(default_factory=dict)  # label -> ExpansionTrajectory
    failures: dict = field(default_factory=dict)  # label -> error message
    bounds: list = field(default_factory=list)  # BoundCurve
    timings: dict = field(default_factory=dict)  # label -> total step seconds
    norm: str = "op"
    version: str = __version__


def run_experiment(config: ExperimentConfig, write: bool = True) -> RunReport:
    """Run every requested method from a shared Gaussian start subspace.

    Bound curves reuse the same start subspace; observed tangents are checked
    against the theorem curves and a violation raises NumericalFailure (it
    would falsify the implementation, not the theorems).  Per-method errors are
    recorded as failure markers and the remaining results are still written.
    """
    violations = validate_config(config)
    if violations:
        raise ValueError("invalid config: " + "; ".join(violations))

    tol = config.tol()
    spectrum = build_spectrum(config.model_params())
    A = HermitianOperator.diagonal(spectrum)
    X = target_subspace(A, config.d)
    V0 = gaussian_subspace(config.n, config.r, config.seed, tol)

    report = RunReport(config=_config_dict(config), norm=config.norm)

    for method in config.methods:
        label = method.value
        try:
            traj = run_method(A, X, V0, method, config.q, tol)
        except Exception as exc:
            report.failures[label] = f"{type(exc).__name__}: {exc}"
            continue
        report.trajectories[label] = traj
        report.timings[label] = float(sum(rec.elapsed for rec in traj.records))

    tan0 = tangent_norm(principal_angles(X, V0), config.norm)
    if config.emit_vt_bound:
        report.bounds.append(vt_bound_curve(spectrum, config.d, config.q, tan0))
    if config.emit_kt_bound:
        for p in config.p_list:
            Hp = construct_Hp(A, V0, config.d, p, tol)
            tanHp = tangent_norm(principal_angles(X, Hp), config.norm)
            report.bounds.append(
                kt_bound_curve(spectrum, config.d, p, config.q, tanHp, tan0)
            )

    _check_bounds(report, config)

    if write and config.out is not None:
        os.makedirs(config.out, exist_ok=True)
        emit_csv(report, os.path.join(config.out, "run.csv"))
        emit_json(report, os.path.join(config.out, "report.json"))
    return report


def _observed_tan(traj: ExpansionTrajectory, norm: str) -> np.ndarray:
    return np.array([tangent_norm(rec.angles, norm) for rec in traj.records])


def _check_bounds(report: RunReport, config: ExperimentConfig) -> None:
    curves = {c.label: c for c in report.bounds}
    slack = 1e-9  # roundoff headroom on strict theorem inequalities
    opt = report.trajectories.get(MethodKind.OPTIMAL_THEORETICAL.value)
    if opt is not None and "vt-bound" in curves:
        observed = _observed_tan(opt, config.norm)
        bound = curves["vt-bound"].values()
        bad = np.nonzero(observed > bound * (1 + slack) + slack)[0]
        if bad.size:
            t = int(bad[0])
            raise NumericalFailure(
                f"optimal expansion violates the geometric bound at t={t}: "
                f"observed {observed[t]:.6e} > bound {bound[t]:.6e}"
            )
    kry = report.trajectories.get(MethodKind.BLOCK_KRYLOV.value)
    if kry is not None:
        observed = _observed_tan(kry, config.norm)
        for p in config.p_list:
            curve = curves.get(f"kt-bound-p{p}")
            if curve is None:
                continue
            bound = curve.values()
            # the theorem covers t >= 1 only
            bad = np.nonzero(observed[1:] > bound[1:] * (1 + slack) + slack)[0]
            if bad.size:
                t = int(bad[0]) + 1
                raise NumericalFailure(
                    f"block Krylov violates the Chebyshev bound (p={p}) at t={t}: "
                    f"observed {observed[t]:.6e} > bound {bound[t]:.6e}"
                )


def _config_dict(config: ExperimentConfig) -> dict:
    d = asdict(config)
    d["methods"] = [m.value for m in config.methods]
    d["p_list"] = list(config.p_list)
    return d


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def emit_csv(report: RunReport, path) -> None:
    """One row per (kind, label, t).  Bound rows carry only ``tan_norm``."""
    norm = report.norm
    lines = [CSV_HEADER]
    for label, traj in report.trajectories.items():
        for rec in traj.records:
            theta_all = ";".join(_fmt(a) for a in rec.angles.angles)
            lines.append(
                f"observed,{label},{rec.t},{rec.dim},{_fmt(rec.angles.theta_max)},"
                f"{theta_all},{_fmt(tangent_norm(rec.angles, norm))},"
            )
    for curve in report.bounds:
        for t, value in curve.points:
            lines.append(f"bound,{curve.label},{t},,,,{_fmt(value)},")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_json(report: RunReport, path) -> None:
    doc = {
        "version": report.version,
        "config": report.config,
        "norm": report.norm,
        "methods": [
            {
                "method": label,
                "records": [
                    {
                        "t": rec.t,
                        "dim": rec.dim,
                        "theta": [float(a) for a in rec.angles.angles],
                        "elapsed_s": rec.elapsed,
                    }
                    for rec in traj.records
                ],
            }
            for label, traj in report.trajectories.items()
        ],
        "failures": report.failures,
        "bounds": [
            {
                "label": curve.label,
                "params": {k: float(v) for k, v in curve.params.items()},
                "points": [[t, float(v)] for t, v in curve.points],
            }
            for curve in report.bounds
        ],
        "timings": report.timings,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
