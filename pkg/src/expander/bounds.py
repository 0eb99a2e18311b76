"""Closed-form convergence-bound calculators and Chebyshev utilities.

Everything here works directly on the eigenvalue list; diagonal operator norms
of polynomial filters are computed in O(n) without forming matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import GenericityFailure, NoSpectralGap, SingularFilter
from .linalg import DEFAULT_TOL, RankTolerance, Subspace, orthonormalize
from .models import HermitianOperator, Spectrum

__all__ = [
    "Shifted",
    "ScaledChebyshev",
    "Coefficients",
    "PolynomialSpec",
    "BoundCurve",
    "mu_d",
    "vt_bound_curve",
    "construct_Hp",
    "kt_bound_curve",
    "poly_filter_factor",
    "chebyshev_T",
]


def chebyshev_T(t: int, x):
    """Chebyshev polynomial of the first kind, stable on the whole real line.

    Uses cos(t arccos x) for |x| <= 1 and the closed form
    ((x + sqrt(x^2-1))^t + (x - sqrt(x^2-1))^t) / 2 for x > 1, which avoids the
    growth issues of the three-term recurrence.  For x just above 1 the
    trigonometric branch is kept to dodge cancellation in sqrt(x^2 - 1).
    """
    if t < 0:
        raise ValueError("degree must be >= 0")
    scalar = np.isscalar(x) or np.ndim(x) == 0
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    ax = np.abs(x_arr)
    out = np.empty_like(x_arr)

    trig = ax <= 1.0 + 1e-12
    out[trig] = np.cos(t * np.arccos(np.clip(x_arr[trig], -1.0, 1.0)))

    big = ~trig
    if np.any(big):
        xb = ax[big]
        root = np.sqrt(xb**2 - 1.0)
        vals = 0.5 * ((xb + root) ** t + (xb - root) ** t)
        # odd degrees are odd functions
        if t % 2 == 1:
            vals *= np.sign(x_arr[big])
        out[big] = vals
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class Shifted:
    """phi(x) = x - s."""

    s: float

    def __call__(self, x):
        return np.asarray(x, dtype=float) - self.s


@dataclass(frozen=True)
class ScaledChebyshev:
    """phi(x) = T_t((x - lo) / (hi - lo))."""

    t: int
    lo: float
    hi: float

    def __post_init__(self):
        if not self.hi > self.lo:
            raise ValueError("need hi > lo")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return chebyshev_T(self.t, (x - self.lo) / (self.hi - self.lo))


@dataclass(frozen=True)
class Coefficients:
    """phi given by coefficients in ascending powers."""

    coeffs: tuple

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(np.asarray(x, dtype=float), self.coeffs)


PolynomialSpec = Union[Shifted, ScaledChebyshev, Coefficients]


@dataclass(frozen=True)
class BoundCurve:
    """A bound value per iteration index, with the parameters that shaped it."""

    label: str
    points: tuple  # of (t, value)
    params: dict

    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.points])


def mu_d(spec: Spectrum, d: int) -> float:
    """The geometric contraction factor
    (lambda_{d+1} - lambda_n) / ((lambda_d - lambda_n) + (lambda_d - lambda_{d+1}))."""
    lam = spec.values
    if not 1 <= d < spec.n:
        raise ValueError("need 1 <= d < n")
    if lam[d - 1] <= lam[d]:
        raise NoSpectralGap("lambda_d must exceed lambda_{d+1}")
    num = lam[d] - lam[-1]
    den = (lam[d - 1] - lam[-1]) + (lam[d - 1] - lam[d])
    return num / den


def vt_bound_curve(spec: Spectrum, d: int, q: int, tan0: float) -> BoundCurve:
    """Geometric decay bound mu_d^t * tan0 for the optimal expansion, t = 0..q."""
    mu = mu_d(spec, d)
    points = tuple((t, mu**t * tan0) for t in range(q + 1))
    return BoundCurve("vt-bound", points, {"d": d, "mu_d": mu, "tan0": tan0})


def construct_Hp(
    A: HermitianOperator,
    V: Subspace,
    d: int,
    p: int,
    tol: RankTolerance = DEFAULT_TOL,
) -> Subspace:
    """The deflation subspace H_p of V, orthogonal to eigenvectors d+1..p.

    With W an orthonormal basis of V, H_p is the image under W of the kernel of
    F = [x_{d+1} ... x_p]^T W; dim H_p = d + dim V - p.  Requires the generic
    condition rank(X_p^T W) = p.
    """
    if not d <= p <= V.k:
        raise ValueError("need d <= p <= dim V")
    W = V.basis
    Xp = A.eigenvectors(0, p)
    s = np.linalg.svd(Xp.T @ W, compute_uv=False)
    if s.size < p or s[-1] <= tol.relative_cutoff * s[0]:
        raise GenericityFailure("rank(X_p^T W) < p")
    if p == d:
        return V
    F = A.eigenvectors(d, p).T @ W
    _, _, Vh = np.linalg.svd(F, full_matrices=True)
    Z = Vh[p - d:].T  # orthonormal basis of ker F, dimension d + r - p
    return orthonormalize(W @ Z, tol)


def kt_bound_curve(
    spec: Spectrum,
    d: int,
    p: int,
    q: int,
    tanHp: float,
    tan0: float | None = None,
) -> BoundCurve:
    """Chebyshev-accelerated bound for the block Krylov subspaces, t = 1..q.

    point(t) = 4 (lambda_{p+1} - lambda_n)/(lambda_d - lambda_n)
               * 3^(-t min{sqrt((lambda_d - lambda_n)/(lambda_{p+1} - lambda_n) - 1), 1})
               * tanHp.
    The t = 0 entry is a plotting passthrough of ``tan0`` (``tanHp`` if omitted).
    """
    lam = spec.values
    if not 1 <= d <= p <= spec.n - 1:
        raise ValueError("need 1 <= d <= p <= n-1")
    if lam[d - 1] <= lam[-1]:
        raise NoSpectralGap("lambda_d must exceed lambda_n")
    ratio = (lam[p] - lam[-1]) / (lam[d - 1] - lam[-1])
    if ratio <= 0:
        raise NoSpectralGap("lambda_{p+1} must exceed lambda_n for a finite rate")
    rate = min(np.sqrt(1.0 / ratio - 1.0), 1.0)
    coeff = 4.0 * ratio
    points = [(0, tanHp if tan0 is None else tan0)]
    points += [(t, coeff * 3.0 ** (-t * rate) * tanHp) for t in range(1, q + 1)]
    return BoundCurve(
        f"kt-bound-p{p}",
        tuple(points),
        {"d": d, "p": p, "coeff": coeff, "rate": rate, "tanHp": tanHp},
    )


def poly_filter_factor(spec: Spectrum, d: int, p: int, phi: PolynomialSpec) -> float:
    """(min_{i<=d} |phi(lambda_i)|)^{-1} * max_{i>p} |phi(lambda_i)|."""
    lam = spec.values
    if not 1 <= d <= p < spec.n:
        raise ValueError("need 1 <= d <= p < n")
    head = np.abs(phi(lam[:d]))
    if np.any(head == 0.0):
        raise SingularFilter("phi vanishes on a leading eigenvalue")
    tail = np.abs(phi(lam[p:]))
    return float(np.max(tail) / np.min(head))
