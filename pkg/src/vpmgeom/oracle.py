"""Brute-force reference computations of the bicone Hilbert distance.

Two routes that share no arithmetic with :func:`vpmgeom.metrics.hilbert_vpm`:

* the cross-ratio of ``A``, ``B`` and the two points where the line through
  them leaves the domain, worked entirely in the scalar line parameter;
* the Birkhoff ``log(M / m)`` on the lifted cone, with ``M`` and ``m`` found
  by bisection against a cone-membership predicate (Cholesky only).
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .domains import ConeElement, as_matrix, lifted_closure_contains, vpm_eps_contains
from .errors import DomainError, SolverError
from .symmat import check_same_dim, pencil_roots

BRACKET_LOG = 50.0
MAX_EXPANSIONS = 8


def boundary_intersections(A, B, eps: float = 0.0) -> tuple[float, float]:
    """Parameters ``t_minus < 0 < 1 < t_plus`` where ``A + t (B - A)`` exits the domain.

    The domain is the bicone, enlarged to ``-eps I < X < (1 + eps) I`` when
    ``eps > 0``. Lower-sheet hits solve ``det(A + eps I + t D) = 0`` and
    upper-sheet hits ``det((1 + eps) I - A - t D) = 0`` with ``D = B - A``.
    """
    A, B = as_matrix(A), as_matrix(B)
    n = check_same_dim(A, B)
    for name, X in (("A", A), ("B", B)):
        if not vpm_eps_contains(X, eps):
            raise DomainError(f"{name} is not an interior point of the domain (eps={eps:g})")
    D = B - A
    if not np.any(D):
        raise DomainError("A == B: the line through them is undefined")
    I = np.eye(n)
    roots = np.concatenate([pencil_roots(A + eps * I, D), pencil_roots((1.0 + eps) * I - A, -D)])
    roots = roots[np.isfinite(roots)]
    below, above = roots[roots < 0.0], roots[roots > 1.0]
    if below.size == 0 or above.size == 0:
        raise SolverError("line through A and B does not exit the domain on both sides")
    return float(below.max()), float(above.min())


def hilbert_cross_ratio(A, B, eps: float = 0.0) -> float:
    """Hilbert distance as the log cross-ratio along the line through ``A`` and ``B``.

    With ``A`` at ``t = 0``, ``B`` at ``t = 1`` and exit points ``t_minus``,
    ``t_plus``, the distance is
    ``log(|0 - t_plus| |t_minus - 1| / (|t_minus - 0| |1 - t_plus|))``.
    Equal inputs return 0.
    """
    Am, Bm = as_matrix(A), as_matrix(B)
    if np.array_equal(Am, Bm):
        return 0.0
    t_minus, t_plus = boundary_intersections(Am, Bm, eps)
    # (t+ (1 - t-)) / ((-t-)(t+ - 1)) = (1 + 1/(-t-)) (1 + 1/(t+ - 1))
    return math.log1p(1.0 / -t_minus) + math.log1p(1.0 / (t_plus - 1.0))


Feasible = Callable[[ConeElement], bool]


def _bisect_log(pred: Callable[[float], bool], increasing: bool, tol: float) -> float:
    """Log of the threshold where ``pred(exp(x))`` switches value.

    ``increasing``: ``pred`` is False below the threshold and True above;
    otherwise the reverse.
    """
    lo, hi = -BRACKET_LOG, BRACKET_LOG

    def below_ok(x):  # True when x lies on the low side of the threshold
        return pred(math.exp(x)) != increasing

    for _ in range(MAX_EXPANSIONS):
        if below_ok(lo):
            break
        lo -= BRACKET_LOG
    else:
        raise SolverError("bisection bracket could not be expanded downward")
    for _ in range(MAX_EXPANSIONS):
        if not below_ok(hi):
            break
        hi += BRACKET_LOG
    else:
        raise SolverError("bisection bracket could not be expanded upward")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if below_ok(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def birkhoff_extremes(
    v: ConeElement,
    w: ConeElement,
    feasible: Feasible = lifted_closure_contains,
    tol: float = 1e-9,
) -> tuple[float, float]:
    """``(M, m)`` with ``M = inf{l : l w - v in cl K}`` and ``m = sup{u : v - u w in cl K}``.

    ``tol`` is the bracket width in ``log`` scale, i.e. a relative tolerance.
    """
    if not (feasible(v) and feasible(w)):
        raise DomainError("both cone elements must lie in the cone")

    def upper(lam):
        return feasible(ConeElement(lam * w.mat - v.mat, lam * w.t - v.t))

    def lower(mu):
        return feasible(ConeElement(v.mat - mu * w.mat, v.t - mu * w.t))

    log_M = _bisect_log(upper, increasing=True, tol=tol)
    log_m = _bisect_log(lower, increasing=False, tol=tol)
    return math.exp(log_M), math.exp(log_m)


def birkhoff_bisect(
    v: ConeElement,
    w: ConeElement,
    feasible: Feasible = lifted_closure_contains,
    tol: float = 1e-9,
) -> float:
    """Birkhoff distance ``log(M / m)`` using only the membership predicate."""
    M, m = birkhoff_extremes(v, w, feasible, tol)
    return math.log(M / m)
