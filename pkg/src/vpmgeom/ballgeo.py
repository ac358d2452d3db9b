"""Hilbert geodesics on the bicone and approximate smallest enclosing balls.

Straight segments are geodesics of any Hilbert geometry, so moving a fraction
``s`` of the way from ``A`` to ``B`` only needs a scalar search along the
segment ``A + t (B - A)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .domains import VpmPoint, as_point
from .errors import DomainError
from .metrics import hilbert_vpm, hilbert_vpm_unchecked

GEODESIC_TOL = 1e-10
GEODESIC_MAX_ITER = 200
TIE_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class Ball:
    center: VpmPoint
    radius: float
    # max distance from each iterate c_0, ..., c_T when produced by an SEB run
    trace: tuple[float, ...] = field(default=(), repr=False)
    iterations: int = 0
    seed: int | None = None

    def __post_init__(self):
        if not self.radius >= 0:
            raise DomainError(f"radius must be >= 0, got {self.radius!r}")


def geodesic_point(A, B, s: float, tol: float = GEODESIC_TOL) -> VpmPoint:
    """Point ``P`` on the segment from ``A`` to ``B`` with ``d(A, P) = s d(A, B)``.

    Found by bisection on the segment parameter, using that ``d(A, A + t(B - A))``
    increases with ``t``. ``s = 0`` and ``s = 1`` return the endpoints exactly.
    """
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"geodesic fraction must lie in [0, 1], got {s!r}")
    A, B = as_point(A), as_point(B)
    if s == 0.0:
        return A
    if s == 1.0:
        return B
    total = hilbert_vpm(A, B).value
    if total == 0.0:
        return A
    target = s * total
    margin = min(A.margin, B.margin)
    D = B.mat - A.mat
    lo, hi = 0.0, 1.0
    P = A.mat
    for _ in range(GEODESIC_MAX_ITER):
        t = 0.5 * (lo + hi)
        P = A.mat + t * D
        # segment points are interior by convexity
        err = hilbert_vpm_unchecked(A.mat, P).value - target
        if abs(err) <= tol or hi - lo <= 1e-16:
            break
        if err > 0:
            hi = t
        else:
            lo = t
    return VpmPoint(P, margin)


def farthest(points: Sequence, c) -> tuple[int, float]:
    """Index and distance of the point farthest from ``c``; lowest index wins ties.

    Distances within a relative ``1e-12`` of the maximum count as ties, so the
    choice does not hinge on last-bit rounding.
    """
    if len(points) == 0:
        raise DomainError("farthest() needs at least one point")
    c = as_point(c)
    pts = [as_point(p).mat for p in points]
    d = np.array([hilbert_vpm_unchecked(c.mat, p).value for p in pts])
    dmax = d.max()
    idx = int(np.flatnonzero(d >= dmax - TIE_RTOL * (1.0 + dmax))[0])
    return idx, float(d[idx])


def seb_badoiu_clarkson(points: Sequence, iterations: int, seed: int = 0, tol: float = GEODESIC_TOL) -> Ball:
    """Approximate smallest enclosing Hilbert ball by iterative geodesic cuts.

    Starting at ``points[0]``, step ``k`` moves the center a fraction
    ``1 / (k + 2)`` of the way towards the current farthest point. The run is
    deterministic; ``seed`` is only recorded on the result. ``tol`` is the
    distance tolerance of each geodesic step.
    """
    if len(points) == 0:
        raise DomainError("seb_badoiu_clarkson() needs at least one point")
    if iterations < 1:
        raise DomainError(f"iterations must be >= 1, got {iterations}")
    pts = [as_point(p) for p in points]
    c = pts[0]
    trace = []
    for k in range(iterations):
        idx, r = farthest(pts, c)
        trace.append(r)
        c = geodesic_point(c, pts[idx], 1.0 / (k + 2), tol)
    _, r = farthest(pts, c)
    trace.append(r)
    return Ball(c, r, tuple(trace), iterations, seed)
