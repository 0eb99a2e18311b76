import json

import numpy as np
import pytest

from expander import (
    ExperimentConfig,
    MethodKind,
    run_experiment,
    validate_config,
)
from expander.harness import CSV_HEADER

SMALL = ExperimentConfig(n=80, d=3, r=8, p_list=(5, 8), q=6, model="linear", seed=0)


class TestValidateConfig:
    def test_default_is_valid(self):
        assert validate_config(ExperimentConfig()) == []

    def test_catches_violations(self):
        bad = ExperimentConfig(n=10, d=6, r=5, p_list=(3, 20), q=-1,
                               model="cubic", norm="nuc", G=-1.0)
        messages = "\n".join(validate_config(bad))
        for needle in ("d <= r", "d <= p violated for p=3", "p <= r violated for p=20",
                       "q must be", "unknown model", "norm must be", "G must be"):
            assert needle in messages

    def test_run_rejects_invalid(self):
        with pytest.raises(ValueError):
            run_experiment(ExperimentConfig(n=5, r=10), write=False)


@pytest.fixture(scope="module")
def report():
    return run_experiment(SMALL, write=False)


class TestRunExperiment:

    def test_all_methods_ran(self, report):
        assert report.failures == {}
        assert set(report.trajectories) == {k.value for k in MethodKind}

    def test_record_counts(self, report):
        for traj in report.trajectories.values():
            assert [rec.t for rec in traj.records] == list(range(SMALL.q + 1))

    def test_shared_start_subspace(self, report):
        dims0 = {traj.records[0].dim for traj in report.trajectories.values()}
        assert dims0 == {SMALL.r}
        theta0 = {round(traj.records[0].angles.theta_max, 12) for traj in report.trajectories.values()}
        assert len(theta0) == 1

    def test_bound_curves_present(self, report):
        labels = {c.label for c in report.bounds}
        assert labels == {"vt-bound", "kt-bound-p5", "kt-bound-p8"}
        for curve in report.bounds:
            assert len(curve.points) == SMALL.q + 1

    def test_timings_recorded(self, report):
        assert set(report.timings) == set(report.trajectories)
        assert all(v >= 0 for v in report.timings.values())


class TestEmission:
    def test_csv_is_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_experiment(ExperimentConfig(**{**SMALL.__dict__, "out": str(a)}))
        run_experiment(ExperimentConfig(**{**SMALL.__dict__, "out": str(b)}))
        assert (a / "run.csv").read_bytes() == (b / "run.csv").read_bytes()

    def test_csv_shape(self, tmp_path):
        out = tmp_path / "run"
        run_experiment(ExperimentConfig(**{**SMALL.__dict__, "out": str(out)}))
        lines = (out / "run.csv").read_text().splitlines()
        assert lines[0] == CSV_HEADER
        rows = [line.split(",") for line in lines[1:]]
        assert all(len(r) == 8 for r in rows)
        observed = [r for r in rows if r[0] == "observed"]
        bound = [r for r in rows if r[0] == "bound"]
        assert len(observed) == 5 * (SMALL.q + 1)
        assert len(bound) == 3 * (SMALL.q + 1)
        # observed rows carry the full angle profile
        assert all(len(r[5].split(";")) == SMALL.d for r in observed)
        # bound rows only carry tan_norm
        assert all(r[3] == "" and r[4] == "" and r[5] == "" for r in bound)

    def test_json_report(self, tmp_path):
        out = tmp_path / "run"
        run_experiment(ExperimentConfig(**{**SMALL.__dict__, "out": str(out)}))
        doc = json.loads((out / "report.json").read_text())
        assert doc["config"]["n"] == SMALL.n
        assert {m["method"] for m in doc["methods"]} == {k.value for k in MethodKind}
        assert {b["label"] for b in doc["bounds"]} == {"vt-bound", "kt-bound-p5", "kt-bound-p8"}
        assert set(doc["timings"]) == {k.value for k in MethodKind}

    def test_seed_changes_output(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_experiment(ExperimentConfig(**{**SMALL.__dict__, "out": str(a)}))
        run_experiment(ExperimentConfig(**{**SMALL.__dict__, "seed": 1, "out": str(b)}))
        assert (a / "run.csv").read_bytes() != (b / "run.csv").read_bytes()


def test_bounds_hold_on_small_runs():
    # run_experiment raises NumericalFailure when an observed tangent crosses
    # a theorem curve; a clean return is the assertion
    for model in ("linear", "ellipsoidal", "polynomial"):
        for seed in (0, 1):
            run_experiment(
                ExperimentConfig(n=80, d=3, r=8, p_list=(3, 5, 8), q=8,
                                 model=model, seed=seed),
                write=False,
            )
