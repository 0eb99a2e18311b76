"""The five subspace-expansion iterations.

Each step function is pure: it maps the previous search subspace to the
expanded one.  ``run_method`` drives any of them for q iterations while
recording dimensions and principal angles against the target.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

import numpy as np

from .errors import RankCollapse, ZeroMatrix
from .linalg import (
    DEFAULT_TOL,
    AngleProfile,
    RankTolerance,
    Subspace,
    deflect,
    orthonormalize,
    principal_angles,
    project,
    subspace_sum,
)
from .models import HermitianOperator, apply

__all__ = [
    "MethodKind",
    "TrajectoryRecord",
    "ExpansionTrajectory",
    "krylov_step",
    "optimal_step",
    "rr_replacement",
    "refined_rr_replacement",
    "computable_step",
    "jia_residual_step",
    "run_method",
]


class MethodKind(enum.Enum):
    OPTIMAL_THEORETICAL = "optimal"
    BLOCK_KRYLOV = "block-krylov"
    RAYLEIGH_RITZ = "rr"
    REFINED_RAYLEIGH_RITZ = "refined-rr"
    JIA_RESIDUAL_RR = "jia-rr"

    @classmethod
    def from_label(cls, label: str) -> "MethodKind":
        for kind in cls:
            if kind.value == label:
                return kind
        raise ValueError(f"unknown method {label!r}; choose from "
                         f"{[k.value for k in cls]}")


@dataclass(frozen=True)
class TrajectoryRecord:
    t: int
    dim: int
    angles: AngleProfile
    elapsed: float


@dataclass(frozen=True)
class ExpansionTrajectory:
    method: MethodKind
    records: list
    final_subspace: Subspace

    def dims(self) -> np.ndarray:
        return np.array([r.dim for r in self.records])

    def theta_max(self) -> np.ndarray:
        return np.array([r.angles.theta_max for r in self.records])


def krylov_step(A: HermitianOperator, K_prev: Subspace, tol: RankTolerance = DEFAULT_TOL) -> Subspace:
    """K_prev + A(K_prev)."""
    return subspace_sum(K_prev, orthonormalize(apply(A, K_prev.basis), tol), tol)


def optimal_step(
    A: HermitianOperator,
    X_target: Subspace,
    V_prev: Subspace,
    tol: RankTolerance = DEFAULT_TOL,
) -> Subspace:
    """One step of the optimal theoretical expansion.

    With S = V + A(V), appends an orthonormal basis of (1 - P_V) P_S(X) to V.
    The result has the same principal angles to X as S.  Returns V unchanged
    when the target's new component is numerically zero.
    """
    S = krylov_step(A, V_prev, tol)
    N_raw = deflect(V_prev, project(S, X_target.basis))
    # X_target has unit-norm columns, so directions below the cutoff at unit
    # scale are roundoff of the projection, not signal
    Q, sv, _ = np.linalg.svd(N_raw, full_matrices=False)
    keep = int(np.count_nonzero(sv > tol.relative_cutoff))
    if keep == 0:
        return V_prev
    return subspace_sum(V_prev, Subspace(Q[:, :keep]), tol)


def rr_replacement(A: HermitianOperator, S: Subspace, d: int) -> Subspace:
    """Rayleigh-Ritz extraction: span of the d leading Ritz vectors of the
    compression of A to S."""
    if d > S.k:
        raise ValueError("need d <= dim S")
    Q = S.basis
    w, U = np.linalg.eigh(Q.T @ apply(A, Q))
    order = np.argsort(w)[::-1]
    return Subspace(Q @ U[:, order[:d]])


def ritz_values(A: HermitianOperator, S: Subspace) -> np.ndarray:
    """Eigenvalues of the compression of A to S, sorted nonincreasing."""
    w = np.linalg.eigvalsh(S.basis.T @ apply(A, S.basis))
    return w[::-1]


def refined_rr_replacement(
    A: HermitianOperator,
    S: Subspace,
    d: int,
    tol: RankTolerance = DEFAULT_TOL,
) -> Subspace:
    """Refined Rayleigh-Ritz extraction.

    For each of the d leading Ritz values mu, the refined vector is Q z where z
    minimizes ||(A - mu I) Q z|| over unit z (smallest right singular vector of
    A Q - mu Q).  Refined vectors are not mutually orthogonal; they are
    orthonormalized rank-revealingly and the span may lose dimension (the
    caller proceeds with the smaller expansion).
    """
    if d > S.k:
        raise ValueError("need d <= dim S")
    Q = S.basis
    AQ = apply(A, Q)
    w = np.linalg.eigvalsh(Q.T @ AQ)[::-1][:d]
    vecs = np.empty((S.n, d))
    for i, mu in enumerate(w):
        _, _, Vh = np.linalg.svd(AQ - mu * Q, full_matrices=False)
        vecs[:, i] = Q @ Vh[-1]
    try:
        out = orthonormalize(vecs, tol)
    except ZeroMatrix as exc:  # pragma: no cover - refined vectors are unit norm
        raise RankCollapse("refined vectors are numerically zero") from exc
    return out


def computable_step(
    A: HermitianOperator,
    V_prev: Subspace,
    d: int,
    proj: str = "rr",
    tol: RankTolerance = DEFAULT_TOL,
) -> Subspace:
    """One step of the computable expansion with the chosen projection method.

    S_hat = V + A(V); X_hat is the Rayleigh-Ritz (``proj='rr'``) or refined
    Rayleigh-Ritz (``proj='refined'``) replacement of the target extracted from
    S_hat; the deflected part of X_hat is appended to V.
    """
    if d > V_prev.k:
        raise ValueError("need d <= dim V")
    S_hat = krylov_step(A, V_prev, tol)
    if proj == "rr":
        X_hat = rr_replacement(A, S_hat, d)
    elif proj == "refined":
        X_hat = refined_rr_replacement(A, S_hat, d, tol)
    else:
        raise ValueError(f"unknown projection {proj!r}")
    try:
        N = orthonormalize(deflect(V_prev, X_hat.basis), tol)
    except ZeroMatrix:
        return V_prev
    return subspace_sum(V_prev, N, tol)


def jia_residual_step(
    A: HermitianOperator,
    V_prev: Subspace,
    d: int,
    tol: RankTolerance = DEFAULT_TOL,
) -> Subspace:
    """Residual-based expansion: Rayleigh-Ritz extraction from the range of the
    residual matrix (1 - P_V) A V, then deflation against V.

    When rank of the residual falls below d, min(d, rank) directions are used.
    An A-invariant V has zero residual and the step is the identity.
    """
    if d > V_prev.k:
        raise ValueError("need d <= dim V")
    R = deflect(V_prev, apply(A, V_prev.basis))
    try:
        R_space = orthonormalize(R, tol)
    except ZeroMatrix:
        return V_prev
    R_hat = rr_replacement(A, R_space, min(d, R_space.k))
    try:
        N = orthonormalize(deflect(V_prev, R_hat.basis), tol)
    except ZeroMatrix:
        return V_prev
    return subspace_sum(V_prev, N, tol)


def _step(A, X_target, V, method, d, tol):
    if method is MethodKind.OPTIMAL_THEORETICAL:
        return optimal_step(A, X_target, V, tol)
    if method is MethodKind.BLOCK_KRYLOV:
        return krylov_step(A, V, tol)
    if method is MethodKind.RAYLEIGH_RITZ:
        return computable_step(A, V, d, "rr", tol)
    if method is MethodKind.REFINED_RAYLEIGH_RITZ:
        return computable_step(A, V, d, "refined", tol)
    if method is MethodKind.JIA_RESIDUAL_RR:
        return jia_residual_step(A, V, d, tol)
    raise ValueError(f"unhandled method {method}")


def run_method(
    A: HermitianOperator,
    X_target: Subspace,
    V0: Subspace,
    method: MethodKind,
    q: int,
    tol: RankTolerance = DEFAULT_TOL,
) -> ExpansionTrajectory:
    """Apply the chosen step q times from V0, recording (t, dim, angles).

    Angles against ``X_target`` are instrumentation only: timings cover the
    step itself.  Once the subspace saturates the full space, the remaining
    records carry angles that are exactly zero.
    """
    if X_target.k > V0.k:
        raise ValueError("need dim X_target <= dim V0")
    if q < 0:
        raise ValueError("q must be >= 0")
    d = X_target.k
    n = V0.n
    zero_profile = AngleProfile(np.zeros(d))

    V = V0
    records = [TrajectoryRecord(0, V.k, _angles_or_zero(X_target, V, n, zero_profile), 0.0)]
    for t in range(1, q + 1):
        if V.k < n:
            t0 = time.perf_counter()
            try:
                V = _step(A, X_target, V, method, d, tol)
            except Exception as exc:
                raise type(exc)(f"{method.value} step failed at t={t}: {exc}") from exc
            elapsed = time.perf_counter() - t0
        else:
            elapsed = 0.0
        records.append(TrajectoryRecord(t, V.k, _angles_or_zero(X_target, V, n, zero_profile), elapsed))
    return ExpansionTrajectory(method, records, V)


def _angles_or_zero(X_target, V, n, zero_profile):
    if V.k == n:
        return zero_profile
    return principal_angles(X_target, V)
