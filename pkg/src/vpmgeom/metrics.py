"""Closed-form distances on the bicone, the PD cone and their 1D/simplex analogues.

Every product of the form ``X^{-1} Y`` is evaluated through the Cholesky
factor ``X = L L^T`` as the symmetric matrix ``L^{-1} Y L^{-T}``, which has the
same spectrum but whose eigenvalues are real in floating point.

The enlarged bicone ``-eps I < X < (1 + eps) I`` is the image of the plain
bicone under the affine map ``X -> (X + eps I) / (1 + 2 eps)``. Hilbert
distances are cross-ratios of collinear points, and affine maps preserve
both collinearity and ratios along a line, so the enlarged distance is the
plain distance between the rescaled points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domains import VpmPoint, as_point, vpm_eps_contains
from .errors import DomainError
from .symmat import check_same_dim, cholesky_or_none, eigvalsh, sym, whiten


@dataclass(frozen=True)
class DistanceReport:
    """Hilbert distance and the four extreme eigenvalues it was computed from.

    ``lambda_*`` are eigenvalues of ``B^{-1} A``, ``mu_*`` those of
    ``(I - B)^{-1} (I - A)``.
    """

    value: float
    lambda_min: float
    lambda_max: float
    mu_min: float
    mu_max: float

    def __float__(self) -> float:
        return self.value

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "lambda_min": self.lambda_min,
            "lambda_max": self.lambda_max,
            "mu_min": self.mu_min,
            "mu_max": self.mu_max,
        }


def relative_spectrum(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Eigenvalues of ``Q^{-1} P`` for PD ``Q``."""
    L = cholesky_or_none(Q)
    if L is None:
        raise DomainError("reference matrix is not positive definite")
    return eigvalsh(whiten(P, L))


def hilbert_vpm(A: VpmPoint | np.ndarray, B: VpmPoint | np.ndarray) -> DistanceReport:
    """Hilbert distance between two points of the open bicone ``0 < X < I``.

    ``d(A, B) = log(max(lambda_max, mu_max) / min(lambda_min, mu_min))``, where
    the lambdas are the extreme eigenvalues of ``B^{-1} A`` and the mus those
    of ``(I - B)^{-1} (I - A)``.

    Parameters
    ----------
    A, B : VpmPoint or array_like, shape (n, n)
        Bicone points. Plain arrays are certified with the minimum margin
        ``1e-12``; anything closer to the boundary raises ``DomainError``.

    Returns
    -------
    DistanceReport
    """
    A, B = as_point(A).mat, as_point(B).mat
    check_same_dim(A, B)
    return hilbert_vpm_unchecked(A, B)


def hilbert_vpm_unchecked(A: np.ndarray, B: np.ndarray) -> DistanceReport:
    """:func:`hilbert_vpm` for symmetric arrays already known to be interior."""
    if np.array_equal(A, B):
        return DistanceReport(0.0, 1.0, 1.0, 1.0, 1.0)
    I = np.eye(A.shape[0])
    lam = relative_spectrum(A, B)
    mu = relative_spectrum(I - A, I - B)
    lmin, lmax, mmin, mmax = float(lam[0]), float(lam[-1]), float(mu[0]), float(mu[-1])
    # the ratio is >= 1 in exact arithmetic; clip rounding below it
    value = max(0.0, math.log(max(lmax, mmax) / min(lmin, mmin)))
    return DistanceReport(value, lmin, lmax, mmin, mmax)


def rescale_eps(X, eps: float) -> np.ndarray:
    """Affine map of the ``eps``-enlarged bicone onto the plain bicone."""
    X = sym(X)
    return (X + eps * np.eye(X.shape[0])) / (1.0 + 2.0 * eps)


def hilbert_vpm_eps(A, B, eps: float) -> float:
    """Hilbert distance of the enlarged bicone ``-eps I < X < (1 + eps) I``.

    Finite for points on the boundary of the plain bicone whenever ``eps > 0``.
    ``eps = 0`` gives exactly :func:`hilbert_vpm`.
    """
    if not eps >= 0:
        raise DomainError(f"epsilon must be >= 0, got {eps!r}")
    A = A.mat if isinstance(A, VpmPoint) else sym(A)
    B = B.mat if isinstance(B, VpmPoint) else sym(B)
    for name, X in (("A", A), ("B", B)):
        if not vpm_eps_contains(X, eps):
            raise DomainError(f"{name} lies outside the bicone enlarged by eps={eps:g}")
    if eps == 0:
        return hilbert_vpm(A, B).value
    return hilbert_vpm(rescale_eps(A, eps), rescale_eps(B, eps)).value


def _require_pd(name: str, X) -> np.ndarray:
    X = sym(X)
    if cholesky_or_none(X) is None:
        raise DomainError(f"{name} is not positive definite")
    return X


def birkhoff_pd(P, Q) -> float:
    """Birkhoff projective distance ``log(lambda_max / lambda_min)`` of ``Q^{-1} P``."""
    P, Q = _require_pd("P", P), _require_pd("Q", Q)
    check_same_dim(P, Q)
    w = relative_spectrum(P, Q)
    return math.log(w[-1] / w[0])


def airm(Q1, Q2) -> float:
    """Affine-invariant Riemannian distance ``sqrt(sum log^2 lambda_i(Q2^{-1} Q1))``."""
    Q1, Q2 = _require_pd("Q1", Q1), _require_pd("Q2", Q2)
    check_same_dim(Q1, Q2)
    w = relative_spectrum(Q1, Q2)
    return float(np.sqrt(np.sum(np.log(w) ** 2)))


def hilbert_interval(x: float, y: float) -> float:
    """Hilbert distance on the open unit interval."""
    for v in (x, y):
        if not 0.0 < v < 1.0:
            raise DomainError(f"{v!r} is not in the open unit interval")
    return abs(math.log((1.0 - x) * y / (x * (1.0 - y))))


def _positive_vectors(p, q) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    if p.shape != q.shape:
        raise DomainError(f"length mismatch: {p.size} vs {q.size}")
    if not (np.all(p > 0) and np.all(q > 0)):
        raise DomainError("entries must be strictly positive")
    return p, q


def hilbert_simplex(p, q, atol: float = 1e-9) -> float:
    """Hilbert distance on the open probability simplex."""
    p, q = _positive_vectors(p, q)
    if abs(p.sum() - 1.0) > atol or abs(q.sum() - 1.0) > atol:
        raise DomainError("simplex points must sum to 1")
    r = p / q
    return math.log(r.max() / r.min())


def birkhoff_orthant(p, q) -> float:
    """Birkhoff distance on the positive orthant, ``log max_ij p_i q_j / (q_i p_j)``."""
    p, q = _positive_vectors(p, q)
    ratio = np.outer(p, q) / np.outer(q, p)
    return math.log(ratio.max())
