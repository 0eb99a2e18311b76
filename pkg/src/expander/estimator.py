"""Scikit-learn style facade over the computable expansion iterations.

The estimator fits a symmetric matrix and exposes an approximate basis of its
leading invariant subspace.  Only the computable methods are offered here; the
theoretical optimal expansion needs the exact target and lives in
:mod:`expander.expansion`.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .expansion import MethodKind, computable_step, jia_residual_step, krylov_step, ritz_values
from .linalg import RankTolerance, Subspace
from .models import HermitianOperator, apply, gaussian_subspace

_COMPUTABLE = (
    MethodKind.BLOCK_KRYLOV,
    MethodKind.RAYLEIGH_RITZ,
    MethodKind.REFINED_RAYLEIGH_RITZ,
    MethodKind.JIA_RESIDUAL_RR,
)


class BlockSubspaceExpander(BaseEstimator, TransformerMixin):
    """Iteratively expand a random block into the leading eigenspace.

    Parameters
    ----------
    n_components : target eigenspace dimension d.
    block_size : starting subspace dimension r (defaults to n_components).
    n_iter : number of expansion steps q.
    method : one of 'block-krylov', 'rr', 'refined-rr', 'jia-rr'.
    rank_cutoff : relative singular value cutoff for rank decisions.
    random_state : seed for the Gaussian starting block.

    Attributes
    ----------
    components_ : (n_components, n) leading Ritz vectors of the fitted subspace.
    subspace_ : (n, k) orthonormal basis of the full expanded subspace.
    eigenvalues_ : leading Ritz values, nonincreasing.
    n_iter_ : iterations actually performed.
    """

    def __init__(self, n_components=5, block_size=None, n_iter=10,
                 method="rr", rank_cutoff=1e-10, random_state=0):
        self.n_components = n_components
        self.block_size = block_size
        self.n_iter = n_iter
        self.method = method
        self.rank_cutoff = rank_cutoff
        self.random_state = random_state

    def fit(self, X, y=None):
        """Fit on a symmetric (n, n) matrix X."""
        kind = MethodKind.from_label(self.method)
        if kind not in _COMPUTABLE:
            raise ValueError(f"method {self.method!r} needs the exact target; "
                             f"choose from {[k.value for k in _COMPUTABLE]}")
        if self.n_components < 1:
            raise ValueError("n_components must be >= 1")
        if self.n_iter < 0:
            raise ValueError("n_iter must be >= 0")
        A = HermitianOperator.from_dense(X)
        d = self.n_components
        r = self.block_size if self.block_size is not None else d
        if not d <= r <= A.n:
            raise ValueError("need n_components <= block_size <= n")
        tol = RankTolerance(self.rank_cutoff)
        seed = 0 if self.random_state is None else self.random_state

        V = gaussian_subspace(A.n, r, seed, tol)
        steps = 0
        for _ in range(self.n_iter):
            if V.k >= A.n:
                break
            if kind is MethodKind.BLOCK_KRYLOV:
                V = krylov_step(A, V, tol)
            elif kind is MethodKind.JIA_RESIDUAL_RR:
                V = jia_residual_step(A, V, d, tol)
            else:
                proj = "rr" if kind is MethodKind.RAYLEIGH_RITZ else "refined"
                V = computable_step(A, V, d, proj, tol)
            steps += 1

        Q = V.basis
        w, U = np.linalg.eigh(Q.T @ apply(A, Q))
        order = np.argsort(w)[::-1][:d]
        self.subspace_ = Q
        self.components_ = (Q @ U[:, order]).T
        self.eigenvalues_ = w[order]
        self.n_iter_ = steps
        return self

    def transform(self, X):
        """Project rows of X onto the fitted leading Ritz directions."""
        if not hasattr(self, "components_"):
            raise ValueError("estimator is not fitted")
        X = np.asarray(X, dtype=float)
        return X @ self.components_.T

    def score(self, X, y=None):
        """Mean Rayleigh quotient of the fitted directions under X."""
        if not hasattr(self, "components_"):
            raise ValueError("estimator is not fitted")
        A = HermitianOperator.from_dense(X)
        vals = ritz_values(A, Subspace(self.components_.T))
        return float(np.mean(vals[: self.n_components]))
