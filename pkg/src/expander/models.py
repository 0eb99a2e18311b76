"""Hermitian test operators and random starting subspaces.

Three diagonal spectrum families (linear, ellipsoidal, polynomial decay), an
optional gap boost G added to the leading d entries, and seeded Gaussian start
subspaces.  The generator index i runs 1..n as in the defining formulas; the
implementation maps it to 0-based arrays in exactly one place per generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidModel, NoSpectralGap
from .linalg import DEFAULT_TOL, RankTolerance, Subspace, orthonormalize

__all__ = [
    "Spectrum",
    "ModelParams",
    "HermitianOperator",
    "linear_decay",
    "ellipsoidal_decay",
    "polynomial_decay",
    "build_spectrum",
    "gaussian_subspace",
    "apply",
    "target_subspace",
    "spectrum_to_csv",
    "spectrum_from_csv",
    "MODEL_NAMES",
]

MODEL_NAMES = ("linear", "ellipsoidal", "polynomial")


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue list, sorted nonincreasing."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("values must be a nonempty 1-d array")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        if np.any(np.diff(values) > 0):
            raise ValueError("values must be nonincreasing")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class ModelParams:
    """Parameters for the diagonal test-matrix generators.

    ``G`` is added to the top ``d`` diagonal entries to enlarge the gap at
    index d.  The ellipsoidal constants (a, b, c, H) are calibration inputs;
    the polynomial constants default to c=1000, s=200, m=50.
    """

    model: str
    n: int
    d: int = 5
    G: float = 0.0
    # ellipsoidal
    a: float = 0.1
    b: float = 100.0
    c: float = 0.8
    H: float = 0.0
    # polynomial
    poly_c: float = 1000.0
    poly_s: float = 200.0
    poly_m: float = 50.0

    def __post_init__(self):
        if self.model not in MODEL_NAMES:
            raise InvalidModel(f"unknown model {self.model!r}")
        if self.n < 1:
            raise InvalidModel("n must be >= 1")
        if self.G < 0:
            raise InvalidModel("G must be >= 0")


def _boost(values: np.ndarray, d: int, G: float) -> np.ndarray:
    if G > 0:
        values = values.copy()
        values[: min(d, values.size)] += G
    return values


def linear_decay(params: ModelParams) -> Spectrum:
    """A_ii = 3000 - (3/5) i for i = 1..n, plus G on the top d entries."""
    if params.model != "linear":
        raise InvalidModel("params.model must be 'linear'")
    i = np.arange(1, params.n + 1, dtype=float)
    return Spectrum(_boost(3000.0 - 0.6 * i, params.d, params.G))


def ellipsoidal_decay(params: ModelParams) -> Spectrum:
    """A_ii = b (1 - (a + c (i/n)^2))^{1/2} - H, plus G on the top d entries."""
    if params.model != "ellipsoidal":
        raise InvalidModel("params.model must be 'ellipsoidal'")
    i = np.arange(1, params.n + 1, dtype=float)
    radicand = 1.0 - (params.a + params.c * (i / params.n) ** 2)
    if np.any(radicand < 0):
        raise InvalidModel("radicand negative: need a + c <= 1")
    return Spectrum(_boost(params.b * np.sqrt(radicand) - params.H, params.d, params.G))


def polynomial_decay(params: ModelParams) -> Spectrum:
    """A_ii = c / ((i + s)^{1/2} + m), plus G on the top d entries."""
    if params.model != "polynomial":
        raise InvalidModel("params.model must be 'polynomial'")
    if params.poly_s < 0 or params.poly_m < 0 or params.poly_c <= 0:
        raise InvalidModel("need s >= 0, m >= 0, c > 0")
    i = np.arange(1, params.n + 1, dtype=float)
    values = params.poly_c / (np.sqrt(i + params.poly_s) + params.poly_m)
    return Spectrum(_boost(values, params.d, params.G))


_GENERATORS = {
    "linear": linear_decay,
    "ellipsoidal": ellipsoidal_decay,
    "polynomial": polynomial_decay,
}


def build_spectrum(params: ModelParams) -> Spectrum:
    """Dispatch to the generator named by ``params.model``."""
    return _GENERATORS[params.model](params)


class HermitianOperator:
    """A real symmetric operator, either diagonal (from a spectrum) or dense.

    Dense operators cache their eigen-frame (eigenvalues nonincreasing with
    matching orthonormal eigenvectors); diagonal ones use the canonical basis.
    """

    def __init__(self, eigenvalues: np.ndarray, eigenvectors: np.ndarray | None, dense: np.ndarray | None):
        self._eigenvalues = eigenvalues
        self._eigenvectors = eigenvectors
        self._dense = dense

    @classmethod
    def diagonal(cls, spectrum: Spectrum) -> "HermitianOperator":
        return cls(spectrum.values, None, None)

    @classmethod
    def from_dense(cls, S: np.ndarray) -> "HermitianOperator":
        S = np.asarray(S, dtype=float)
        if S.ndim != 2 or S.shape[0] != S.shape[1]:
            raise ValueError("dense operator must be square")
        scale = max(np.max(np.abs(S)), 1e-300)
        if np.max(np.abs(S - S.T)) > 1e-12 * scale:
            raise ValueError("dense operator must be symmetric to 1e-12")
        S = 0.5 * (S + S.T)
        w, Q = np.linalg.eigh(S)
        order = np.argsort(w)[::-1]
        w, Q = w[order], Q[:, order]
        recon = (Q * w) @ Q.T
        rel = np.linalg.norm(recon - S) / max(np.linalg.norm(S), 1e-300)
        if rel > 1e-9:
            raise ValueError(f"eigen-frame does not reconstruct the matrix ({rel:.3e})")
        return cls(w, Q, S)

    @property
    def n(self) -> int:
        return self._eigenvalues.size

    @property
    def is_diagonal(self) -> bool:
        return self._dense is None and self._eigenvectors is None

    @property
    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues sorted nonincreasing."""
        return self._eigenvalues

    @property
    def spectrum(self) -> Spectrum:
        return Spectrum(self._eigenvalues)

    def eigenvectors(self, lo: int, hi: int) -> np.ndarray:
        """Orthonormal eigenvectors for eigenvalue indices lo..hi-1 (0-based)."""
        if self.is_diagonal:
            return np.eye(self.n)[:, lo:hi]
        return self._eigenvectors[:, lo:hi]

    @property
    def operator_norm(self) -> float:
        return float(np.max(np.abs(self._eigenvalues)))


def apply(A: HermitianOperator, M: np.ndarray) -> np.ndarray:
    """A @ M; diagonal operators scale rows, dense ones multiply."""
    M = np.asarray(M, dtype=float)
    if M.shape[0] != A.n:
        raise ValueError("dimension mismatch")
    if A.is_diagonal:
        return A.eigenvalues[:, None] * M
    return A._dense @ M


def target_subspace(A: HermitianOperator, d: int) -> Subspace:
    """Span of the eigenvectors of the d largest eigenvalues.

    Raises NoSpectralGap when the gap at index d is below roundoff scale.
    """
    lam = A.eigenvalues
    if not 1 <= d < A.n:
        raise ValueError("need 1 <= d < n")
    gap = lam[d - 1] - lam[d]
    if gap <= 10 * np.finfo(float).eps * abs(lam[0]):
        raise NoSpectralGap(f"lambda_d - lambda_d+1 = {gap:.3e} is too small")
    return Subspace(A.eigenvectors(0, d))


def gaussian_subspace(n: int, r: int, seed: int, tol: RankTolerance = DEFAULT_TOL) -> Subspace:
    """Orthonormalized range of a seeded standard Gaussian n-by-r draw."""
    if r > n:
        raise ValueError("need r <= n")
    rng = np.random.default_rng(seed)
    return orthonormalize(rng.standard_normal((n, r)), tol)


def spectrum_to_csv(spectrum: Spectrum, path) -> None:
    """Write the spectrum as a one-column CSV (no header)."""
    with open(path, "w", encoding="utf-8") as fh:
        for v in spectrum.values:
            fh.write(f"{v:.17g}\n")


def spectrum_from_csv(path) -> Spectrum:
    """Read a one-column CSV written by :func:`spectrum_to_csv`."""
    values = np.loadtxt(path, dtype=float, ndmin=1)
    return Spectrum(values)
