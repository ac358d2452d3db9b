"""Maps between the PD cone, the bicone and Gaussian parameters.

Where a map is a scalar function of the eigenvalues it is evaluated in the
eigenbasis of its argument; results are exactly symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import as_matrix, vpm_contains
from .errors import DomainError
from .metrics import relative_spectrum
from .symmat import check_same_dim, cholesky_or_none, spectral_map, sym

ORTHONORMAL_TOL = 1e-8


def _require_pd(X, what: str = "input") -> np.ndarray:
    X = sym(X)
    if cholesky_or_none(X) is None:
        raise DomainError(f"{what} is not positive definite")
    return X


def iota(X) -> np.ndarray:
    """``X (I + X)^{-1}``: PD cone onto the bicone, eigenvalues ``l -> l / (1 + l)``."""
    X = _require_pd(X)
    return spectral_map(X, lambda w: w / (1.0 + w))


def iota_inv(A) -> np.ndarray:
    """``A (I - A)^{-1}``: bicone onto the PD cone, eigenvalues ``l -> l / (1 - l)``."""
    A = as_matrix(A)
    if not vpm_contains(A):
        raise DomainError("iota_inv needs a point strictly inside the bicone")
    return spectral_map(A, lambda w: w / (1.0 - w))


def _sandwich(S: np.ndarray, H) -> np.ndarray:
    """``S^{-1} H S^{-1}`` for symmetric invertible ``S``."""
    H = sym(H)
    check_same_dim(S, H)
    Y = np.linalg.solve(S, np.linalg.solve(S, H).T)
    return 0.5 * (Y + Y.T)


def d_iota(X, H) -> np.ndarray:
    """Differential of :func:`iota` at ``X`` applied to ``H``: ``(I+X)^{-1} H (I+X)^{-1}``."""
    X = _require_pd(X)
    return _sandwich(np.eye(X.shape[0]) + X, H)


def d_iota_inv(A, H) -> np.ndarray:
    """Differential of :func:`iota_inv` at ``A`` applied to ``H``: ``(I-A)^{-1} H (I-A)^{-1}``."""
    A = as_matrix(A)
    if not vpm_contains(A):
        raise DomainError("d_iota_inv needs a point strictly inside the bicone")
    return _sandwich(np.eye(A.shape[0]) - A, H)


def t1_covariance(Sigma) -> np.ndarray:
    """Covariance coordinates ``Sigma (I + Sigma)^{-1}``; identical to :func:`iota`."""
    return iota(Sigma)


def t2_precision(P) -> np.ndarray:
    """Precision coordinates ``(I + P)^{-1}``."""
    P = _require_pd(P)
    return spectral_map(P, lambda w: 1.0 / (1.0 + w))


def mobius(A, B) -> np.ndarray:
    """Matrix Moebius transform ``(I - A)^{-1} (I - B)``; not symmetric in general."""
    A, B = sym(A), sym(B)
    n = check_same_dim(A, B)
    I = np.eye(n)
    try:
        return np.linalg.solve(I - A, I - B)
    except np.linalg.LinAlgError as exc:
        raise DomainError("I - A is singular") from exc


def mobius_eigenvalues(A, B) -> np.ndarray:
    """Spectrum of :func:`mobius` for bicone points, via a symmetric similarity."""
    A, B = as_matrix(A), as_matrix(B)
    I = np.eye(check_same_dim(A, B))
    return relative_spectrum(I - B, I - A)


def complement(X) -> np.ndarray:
    X = as_matrix(X)
    return np.eye(X.shape[0]) - X


def conjugate(X, U) -> np.ndarray:
    """``U^T X U`` for orthonormal ``U``."""
    X = as_matrix(X)
    U = np.asarray(U, dtype=float)
    if U.shape != X.shape:
        raise DomainError(f"U has shape {U.shape}, expected {X.shape}")
    err = np.max(np.abs(U.T @ U - np.eye(U.shape[0])))
    if err > ORTHONORMAL_TOL:
        raise DomainError(f"U is not orthonormal: max|U^T U - I| = {err:.3e}")
    Y = U.T @ X @ U
    return 0.5 * (Y + Y.T)


@dataclass(frozen=True, eq=False)
class GaussianParams:
    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).ravel()
        cov = sym(self.covariance)
        if mean.size != cov.shape[0]:
            raise DomainError(f"mean has length {mean.size} but covariance is {cov.shape[0]}x{cov.shape[0]}")
        if cholesky_or_none(cov - 1e-12 * np.eye(cov.shape[0])) is None:
            raise DomainError("covariance is not positive definite")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)


def calvo_oller(g: GaussianParams) -> np.ndarray:
    """Embed ``N(mu, Sigma)`` as ``[[Sigma + mu mu^T, mu], [mu^T, 1]]`` in PD(n + 1)."""
    mu, S = g.mean, g.covariance
    n = mu.size
    E = np.empty((n + 1, n + 1))
    E[:n, :n] = S + np.outer(mu, mu)
    E[:n, n] = mu
    E[n, :n] = mu
    E[n, n] = 1.0
    if cholesky_or_none(E) is None:
        raise DomainError("embedded matrix failed the positive-definiteness check")
    return E
