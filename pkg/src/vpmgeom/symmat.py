"""Dense symmetric matrices: validation, spectra, Loewner order and pencils.

Symmetric matrices are carried as plain ``numpy`` arrays of shape ``(n, n)``.
:func:`sym` is the single entry point that turns arbitrary input into such an
array, symmetrizing away floating-point noise and rejecting genuine asymmetry.
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import AsymmetryError, DegeneratePencilError, DimensionError, SolverError

DEFAULT_TOL = 1e-10
ASYMMETRY_RTOL = 1e-8


class SpectralDecomp(NamedTuple):
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # orthonormal columns


def sym(M, rtol: float = ASYMMETRY_RTOL) -> np.ndarray:
    """Return ``(M + M.T) / 2`` as a float array after validating ``M``.

    Raises :class:`AsymmetryError` when ``max|M - M.T|`` exceeds
    ``rtol * max(1, max|M|)`` and :class:`DimensionError` for non-square or
    empty input.
    """
    X = np.array(M, dtype=float)
    if X.ndim == 0:
        X = X.reshape(1, 1)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(X))))
    asym = float(np.max(np.abs(X - X.T)))
    if asym > rtol * scale:
        raise AsymmetryError(
            f"matrix is not symmetric: max|M - M^T| = {asym:.3e} exceeds {rtol:.0e} * {scale:.3g}"
        )
    return 0.5 * (X + X.T)


def check_same_dim(*mats: np.ndarray) -> int:
    n = mats[0].shape[0]
    for M in mats[1:]:
        if M.shape[0] != n:
            raise DimensionError(f"dimension mismatch: {n} vs {M.shape[0]}")
    return n


def sym_eigen(X) -> SpectralDecomp:
    X = sym(X)
    try:
        w, Q = np.linalg.eigh(X)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"symmetric eigensolver did not converge: {exc}") from exc
    return SpectralDecomp(w, Q)


def eigvalsh(X: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.eigvalsh(X)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"symmetric eigensolver did not converge: {exc}") from exc


def extreme_eigenvalues(X: np.ndarray) -> tuple[float, float]:
    w = eigvalsh(X)
    return float(w[0]), float(w[-1])


def spectral_map(X, fn) -> np.ndarray:
    """Apply a scalar function to the eigenvalues of ``X``, keeping its eigenvectors."""
    w, Q = sym_eigen(X)
    Y = (Q * fn(w)) @ Q.T
    return 0.5 * (Y + Y.T)


def loewner_leq(A, B, tol: float = DEFAULT_TOL) -> bool:
    """``A <= B`` in the Loewner order, i.e. ``lambda_min(B - A) >= -tol``."""
    A, B = sym(A), sym(B)
    check_same_dim(A, B)
    return extreme_eigenvalues(B - A)[0] >= -tol


def cholesky_or_none(X: np.ndarray) -> np.ndarray | None:
    """Lower Cholesky factor of ``X``, or ``None`` when ``X`` is not numerically PD."""
    try:
        return np.linalg.cholesky(X)
    except np.linalg.LinAlgError:
        return None


def is_pd(X, tol: float = 0.0) -> bool:
    """True iff ``lambda_min(X) > tol``, decided by factoring ``X - tol*I``.

    No eigensolver is involved, which keeps this predicate independent of the
    spectral code paths it is used to cross-check.
    """
    try:
        X = sym(X)
    except (ValueError, AsymmetryError):
        return False
    if tol:
        X = X - tol * np.eye(X.shape[0])
    return cholesky_or_none(X) is not None


def is_psd(X, tol: float = 0.0) -> bool:
    """True iff ``X + tol*I`` admits a Cholesky factorization."""
    return is_pd(X, -tol)


def whiten(A: np.ndarray, L: np.ndarray) -> np.ndarray:
    """``L^{-1} A L^{-T}`` for lower-triangular ``L``; symmetric when ``A`` is."""
    Y = scipy.linalg.solve_triangular(L, A, lower=True, check_finite=False)
    Y = scipy.linalg.solve_triangular(L, Y.T, lower=True, check_finite=False)
    return 0.5 * (Y + Y.T)


def pencil_roots(A, D, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Real roots ``t`` of ``det(A + t D) = 0``, ascending, with multiplicity.

    Directions ``v`` with ``D v = 0`` but ``A v != 0`` contribute ``+inf``
    entries. A definite ``D`` (or, failing that, a definite ``A``) reduces the
    problem to a standard symmetric eigenproblem; otherwise a QZ solve is used
    and complex root pairs are dropped.
    """
    A, D = sym(A), sym(D)
    n = check_same_dim(A, D)

    L = cholesky_or_none(D)
    if L is not None:
        # A v = c D v  <=>  det(A - c D) = 0
        return np.sort(-eigvalsh(whiten(A, L)))
    L = cholesky_or_none(-D)
    if L is not None:
        return np.sort(eigvalsh(whiten(A, L)))
    L = cholesky_or_none(A)
    if L is not None:
        # det(A + t D) = det(A) det(I + t nu)
        nu = eigvalsh(whiten(D, L))
        cut = 1e-12 * max(float(np.max(np.abs(nu))), np.finfo(float).tiny)
        with np.errstate(divide="ignore"):
            roots = np.where(np.abs(nu) <= cut, math.inf, -1.0 / nu)
        return np.sort(roots)

    alpha, beta = scipy.linalg.eig(A, -D, right=False, homogeneous_eigvals=True)
    scale_a = max(1.0, float(np.max(np.abs(A))))
    scale_d = max(1.0, float(np.max(np.abs(D))))
    small_a = np.abs(alpha) <= tol * scale_a * n
    small_b = np.abs(beta) <= tol * scale_d * n
    if np.any(small_a & small_b):
        raise DegeneratePencilError("det(A + tD) vanishes identically: singular pencil")
    roots = []
    for a, b, zero_b in zip(alpha, beta, small_b):
        if zero_b:
            roots.append(math.inf)
            continue
        t = a / b
        if abs(t.imag) <= 1e-9 * max(1.0, abs(t.real)):
            roots.append(t.real)
    return np.sort(np.array(roots, dtype=float))


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Orthonormalize a Gaussian matrix; the sign fix makes the draw Haar."""
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


# --- JSON matrix format: {"dim": n, "rows": [[...], ...]} ---


def matrix_to_json(X) -> dict:
    X = np.asarray(X, dtype=float)
    return {"dim": int(X.shape[0]), "rows": X.tolist()}


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "dim" not in obj or "rows" not in obj:
        raise ValueError('matrix JSON must be an object with "dim" and "rows"')
    n = obj["dim"]
    rows = obj["rows"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f'"dim" must be a positive integer, got {n!r}')
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DimensionError(f'"rows" is not a {n}x{n} array')
    return sym(rows)


def load_matrix(path: str | os.PathLike) -> np.ndarray:
    return matrix_from_json(json.loads(Path(path).read_text()))
