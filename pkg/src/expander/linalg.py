"""Dense linear-algebra primitives: subspaces, principal angles, projectors.

All subspaces are represented by matrices with orthonormal columns over the
reals.  Rank decisions are made relative to the largest singular value of the
matrix at hand (see :class:`RankTolerance`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateIntersection, ZeroMatrix, ZeroProjection

__all__ = [
    "RankTolerance",
    "Subspace",
    "AngleProfile",
    "orthonormalize",
    "pseudo_inverse",
    "principal_angles",
    "tangent_profile",
    "tangent_upper_bound",
    "project",
    "deflect",
    "subspace_sum",
    "orthonormal_complement",
    "tangent_norm",
]

_ORTHO_TOL = 1e-12


@dataclass(frozen=True)
class RankTolerance:
    """Relative cutoff for numerical rank: singular values below
    ``relative_cutoff * s_max`` are treated as zero."""

    relative_cutoff: float = 1e-10

    def __post_init__(self):
        if not 0.0 < self.relative_cutoff < 1.0:
            raise ValueError("relative_cutoff must lie in (0, 1)")


DEFAULT_TOL = RankTolerance()


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of R^n given by an n-by-k orthonormal basis."""

    basis: np.ndarray

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=float)
        if basis.ndim != 2:
            raise ValueError("basis must be a 2-d array")
        n, k = basis.shape
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
        gram_err = np.max(np.abs(basis.T @ basis - np.eye(k)))
        if gram_err > _ORTHO_TOL:
            raise ValueError(f"columns not orthonormal (max deviation {gram_err:.3e})")
        basis = basis.copy()
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def k(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class AngleProfile:
    """Nondecreasing principal angles (radians) with derived trigonometry.

    ``tangents`` carries ``inf`` where the angle is exactly pi/2; that case is
    structurally distinct and never reported as a large finite number.
    """

    angles: np.ndarray
    cosines: np.ndarray = field(init=False)
    sines: np.ndarray = field(init=False)
    tangents: np.ndarray = field(init=False)

    def __post_init__(self):
        angles = np.asarray(self.angles, dtype=float)
        if np.any(np.diff(angles) < 0):
            raise ValueError("angles must be nondecreasing")
        if np.any(angles < 0) or np.any(angles > np.pi / 2):
            raise ValueError("angles must lie in [0, pi/2]")
        angles = angles.copy()
        angles.setflags(write=False)
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "cosines", np.cos(angles))
        object.__setattr__(self, "sines", np.sin(angles))
        tangents = np.where(angles == np.pi / 2, np.inf, np.tan(angles))
        object.__setattr__(self, "tangents", tangents)

    @property
    def k(self) -> int:
        return self.angles.size

    @property
    def theta_max(self) -> float:
        return float(self.angles[-1])


def orthonormalize(M: np.ndarray, tol: RankTolerance = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of the numerical column space of ``M``.

    Raises ZeroMatrix when every singular value falls below the cutoff.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        raise ZeroMatrix("matrix is numerically zero")
    rank = int(np.count_nonzero(s > tol.relative_cutoff * s[0]))
    if rank == 0:
        raise ZeroMatrix("matrix is numerically zero")
    return Subspace(U[:, :rank])


def pseudo_inverse(M: np.ndarray, tol: RankTolerance = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudo-inverse with rank decided by ``tol``."""
    M = np.asarray(M, dtype=float)
    return np.linalg.pinv(M, rcond=tol.relative_cutoff)


def orthonormal_complement(S: Subspace) -> Subspace:
    """Orthonormal basis of the orthogonal complement of ``S``.

    Requires k < n (the complement of the full space is empty).
    """
    if S.k == S.n:
        raise ValueError("full space has no orthogonal complement")
    U, _, _ = np.linalg.svd(S.basis, full_matrices=True)
    return Subspace(U[:, S.k:])


def principal_angles(X: Subspace, Y: Subspace) -> AngleProfile:
    """Principal angles between two subspaces of the same ambient space.

    Cosines come from the SVD of X^T Y; angles below pi/4 are recomputed from
    the sines (SVD of the residual after projecting the smaller-dimensional
    basis onto the other subspace), which restores small-angle accuracy.
    """
    if X.n != Y.n:
        raise ValueError("ambient dimensions differ")
    small, big = (X, Y) if X.k <= Y.k else (Y, X)
    k = small.k
    cos = np.linalg.svd(small.basis.T @ big.basis, compute_uv=False)
    cos = np.clip(cos, 0.0, 1.0)  # descending: pairs with ascending angles
    residual = small.basis - big.basis @ (big.basis.T @ small.basis)
    sin = np.linalg.svd(residual, compute_uv=False)
    sin = np.clip(sin[::-1], 0.0, 1.0)  # ascending, aligned with cos above
    angles = np.where(cos**2 > 0.5, np.arcsin(sin[:k]), np.arccos(cos))
    return AngleProfile(np.sort(angles))


def tangent_profile(X: Subspace, V: Subspace, tol: RankTolerance = DEFAULT_TOL) -> np.ndarray:
    """Tangents of the principal angles between X and V, sorted nonincreasing.

    Computed as the singular values of Xperp^T V (X^T V)^+, which equal the
    tangents whenever rank(X^T V) = dim X.  Raises DegenerateIntersection when
    that generic condition fails.
    """
    if X.k > V.k:
        raise ValueError("need dim X <= dim V")
    C = X.basis.T @ V.basis
    s = np.linalg.svd(C, compute_uv=False)
    if s[0] == 0.0 or np.count_nonzero(s > tol.relative_cutoff * s[0]) < X.k:
        raise DegenerateIntersection("rank(X^T V) < dim X")
    X_perp = orthonormal_complement(X)
    T = (X_perp.basis.T @ V.basis) @ pseudo_inverse(C, tol)
    sv = np.linalg.svd(T, compute_uv=False)
    return sv[: X.k]


def tangent_upper_bound(
    X: Subspace,
    X_perp: Subspace,
    V_raw: np.ndarray,
    tol: RankTolerance = DEFAULT_TOL,
) -> np.ndarray:
    """Singular values of Xperp^T V (X^T V)^+ for a raw (non-orthonormal) block.

    These dominate the tangents of the principal angles between X and the range
    of ``V_raw`` entrywise, with equality when ``V_raw`` has orthonormal
    columns and rank(X^T V) = dim X.
    """
    V_raw = np.asarray(V_raw, dtype=float)
    C = X.basis.T @ V_raw
    if np.linalg.norm(C, 2) <= tol.relative_cutoff * max(np.linalg.norm(V_raw, 2), 1e-300):
        raise ZeroProjection("X^T V is numerically zero")
    T = (X_perp.basis.T @ V_raw) @ pseudo_inverse(C, tol)
    sv = np.linalg.svd(T, compute_uv=False)
    return sv[: X.k]


def project(S: Subspace, M: np.ndarray) -> np.ndarray:
    """P_S M, the orthogonal projection of the columns of M onto S."""
    M = np.asarray(M, dtype=float)
    return S.basis @ (S.basis.T @ M)


def deflect(S: Subspace, M: np.ndarray) -> np.ndarray:
    """(I - P_S) M, the residual of M after projecting onto S."""
    M = np.asarray(M, dtype=float)
    return M - S.basis @ (S.basis.T @ M)


def subspace_sum(U: Subspace, V: Subspace, tol: RankTolerance = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of U + V, built as U plus the deflected part of V.

    Uses block Gram-Schmidt with one reorthogonalization pass against U, so the
    result stays orthonormal even for long accumulated bases.  Returns U when V
    is numerically contained in it.
    """
    if U.n != V.n:
        raise ValueError("ambient dimensions differ")
    D = deflect(U, V.basis)
    D -= U.basis @ (U.basis.T @ D)  # reorthogonalization pass
    Q, sv, _ = np.linalg.svd(D, full_matrices=False)
    # V has unit-norm columns, so the cutoff is anchored at scale 1: a deflected
    # part that is pure roundoff must not enlarge the sum
    keep = int(np.count_nonzero(sv > tol.relative_cutoff * max(sv[0] if sv.size else 0.0, 1.0)))
    if keep == 0:
        return U
    Q = Q[:, :keep]
    # directions with tiny singular values pick up an O(eps / sv) component
    # along U during normalization; one pass on the unit-norm columns removes it
    Q = Q - U.basis @ (U.basis.T @ Q)
    Q /= np.linalg.norm(Q, axis=0)
    return Subspace(np.hstack([U.basis, Q]))


def tangent_norm(profile: AngleProfile, norm: str = "op") -> float:
    """Unitarily invariant norm of tan(Theta): ``op`` (largest) or ``fro``."""
    t = profile.tangents
    if np.any(np.isinf(t)):
        return float("inf")
    if norm == "op":
        return float(t[-1]) if t.size else 0.0
    if norm == "fro":
        return float(np.sqrt(np.sum(t**2)))
    raise ValueError(f"unknown norm {norm!r}")
