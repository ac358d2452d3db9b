"""Membership, sampling and projection for the PD cone, the bicone and its cone.

The open bicone is ``VPM(n) = {X : 0 < X < I}`` in the Loewner order. Points
handed to distance routines are wrapped in :class:`VpmPoint`, which certifies
at construction that every eigenvalue sits at least ``margin`` away from
``{0, 1}``.

The lifted cone ``C_n = {(tX, t) : X in VPM(n), t > 0}`` has dual

    C_n* = {(Y, s) : s > sum of |lambda_i(Y)| over negative lambda_i(Y)},

because ``inf tr(ZY)`` over ``Z`` in the bicone equals the sum of the
negative eigenvalues of ``Y`` (take ``Z`` the projector onto the negative
eigenspace). :func:`dual_cone_contains` uses this convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .symmat import extreme_eigenvalues, random_orthogonal, sym, sym_eigen

MIN_MARGIN = 1e-12
_CERT_SLACK = 1e-14


@dataclass(frozen=True, eq=False)
class VpmPoint:
    """A symmetric matrix certified to lie in ``[margin, 1 - margin]`` spectrally."""

    mat: np.ndarray
    margin: float = MIN_MARGIN

    def __post_init__(self):
        if not self.margin >= MIN_MARGIN:
            raise DomainError(f"certification margin {self.margin!r} is below {MIN_MARGIN}")
        X = sym(self.mat)
        lo, hi = extreme_eigenvalues(X)
        if lo < self.margin - _CERT_SLACK or hi > 1.0 - self.margin + _CERT_SLACK:
            raise DomainError(
                f"matrix is not inside the bicone with margin {self.margin:g}: "
                f"eigenvalues span [{lo:.6g}, {hi:.6g}]"
            )
        X.setflags(write=False)
        object.__setattr__(self, "mat", X)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def as_point(X, margin: float = MIN_MARGIN) -> VpmPoint:
    if isinstance(X, VpmPoint):
        return X
    return VpmPoint(X, margin)


def as_matrix(X) -> np.ndarray:
    if isinstance(X, VpmPoint):
        return X.mat
    return sym(X)


@dataclass(frozen=True, eq=False)
class ConeElement:
    """A pair ``(mat, t)`` in ``Sym(n) x R``; membership is queried, not enforced."""

    mat: np.ndarray
    t: float

    def __post_init__(self):
        object.__setattr__(self, "mat", sym(self.mat))
        object.__setattr__(self, "t", float(self.t))

    @classmethod
    def lift(cls, X, t: float = 1.0) -> ConeElement:
        """The cone element ``(t X, t)`` over a bicone point ``X``."""
        return cls(t * as_matrix(X), t)

    def scaled(self, c: float) -> ConeElement:
        return ConeElement(c * self.mat, c * self.t)


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not eps >= 0:
        raise DomainError(f"epsilon must be >= 0, got {eps!r}")
    return eps


def vpm_contains(X, margin: float = 0.0) -> bool:
    lo, hi = extreme_eigenvalues(as_matrix(X))
    return margin < lo and hi < 1.0 - margin


def vpm_eps_contains(X, eps: float, margin: float = 0.0) -> bool:
    """Open membership in the enlarged bicone ``-eps I < X < (1 + eps) I``."""
    eps = _check_eps(eps)
    lo, hi = extreme_eigenvalues(as_matrix(X))
    return -eps + margin < lo and hi < 1.0 + eps - margin


def _check_delta(delta: float) -> None:
    if not 0.0 < delta < 0.5:
        raise DomainError(f"delta must lie in (0, 0.5), got {delta!r}")


def sample_vpm(n: int, seed: int | np.random.Generator, delta: float = 0.05) -> VpmPoint:
    """Draw ``Q^T diag(u) Q`` with ``Q`` Haar-orthogonal and ``u_i ~ U[delta, 1 - delta]``.

    Deterministic in ``seed``. ``seed`` may also be a ``numpy`` generator, which
    is advanced in place.
    """
    _check_delta(delta)
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    Q = random_orthogonal(n, rng)
    lam = rng.uniform(delta, 1.0 - delta, size=n)
    return VpmPoint((Q.T * lam) @ Q, delta)


def project_to_vpm(X, delta: float = 0.01) -> VpmPoint:
    """Clip the eigenvalues of ``X`` to ``[delta, 1 - delta]``."""
    _check_delta(delta)
    X = sym(X)
    w, Q = sym_eigen(X)
    if w[0] >= delta and w[-1] <= 1.0 - delta:
        return VpmPoint(X, delta)
    w = np.clip(w, delta, 1.0 - delta)
    return VpmPoint((Q * w) @ Q.T, delta)


def cone_contains(e: ConeElement) -> bool:
    return e.t > 0 and vpm_contains(e.mat / e.t)


def negative_part_trace(Y) -> float:
    """Sum of ``|lambda_i(Y)|`` over the negative eigenvalues of ``Y``."""
    w = np.linalg.eigvalsh(as_matrix(Y))
    return float(-np.sum(w[w < 0]))


def dual_cone_contains(e: ConeElement) -> bool:
    """Membership of ``(Y, s)`` in the dual of the lifted bicone cone."""
    return e.t > negative_part_trace(e.mat)


def lifted_closure_contains(e: ConeElement, tol: float = 0.0) -> bool:
    """Closure of ``C_n``: ``t >= 0``, ``Y >= 0`` and ``t I - Y >= 0``.

    Decided with Cholesky factorizations only, so it can serve as the
    feasibility predicate of an eigensolver-free oracle.
    """
    if e.t < -tol:
        return False
    n = e.mat.shape[0]
    shift = tol * np.eye(n)
    try:
        np.linalg.cholesky(e.mat + shift)
        np.linalg.cholesky(e.t * np.eye(n) - e.mat + shift)
    except np.linalg.LinAlgError:
        return False
    return True
