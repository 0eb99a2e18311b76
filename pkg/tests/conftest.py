import numpy as np
import pytest

from expander import (
    ExperimentConfig,
    HermitianOperator,
    ModelParams,
    build_spectrum,
    gaussian_subspace,
    run_experiment,
    target_subspace,
)

DESK_MODELS = ("linear", "ellipsoidal", "polynomial")
DESK_SEEDS = (0, 1, 2)


def desk_config(model: str, seed: int) -> ExperimentConfig:
    return ExperimentConfig(
        n=500, d=5, r=20, p_list=(5, 10, 15, 20), q=30,
        model=model, seed=seed, out=None,
    )


@pytest.fixture(scope="session")
def desk_runs():
    """All-methods runs at desk scale, shared across test modules."""
    runs = {}
    for model in DESK_MODELS:
        for seed in DESK_SEEDS:
            runs[(model, seed)] = run_experiment(desk_config(model, seed), write=False)
    return runs


@pytest.fixture(scope="session")
def desk_problem():
    """Operator, target, and start subspace for the linear model, seed 0."""
    params = ModelParams(model="linear", n=500, d=5)
    A = HermitianOperator.diagonal(build_spectrum(params))
    X = target_subspace(A, 5)
    V0 = gaussian_subspace(500, 20, 0)
    return A, X, V0


def random_subspace(rng: np.random.Generator, n: int, k: int):
    from expander import orthonormalize

    return orthonormalize(rng.standard_normal((n, k)))
