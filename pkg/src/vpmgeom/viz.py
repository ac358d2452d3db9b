"""Lorentz-cone coordinates for 2x2 bicone points and CSV point-cloud exports.

``Q = [[a, c], [c, b]]`` corresponds to ``(t, x, y) = ((a + b)/2, (a - b)/2, c)``.
Its eigenvalues are ``t -/+ sqrt(x^2 + y^2)``, so the closed 2D bicone is
``{t >= r} & {1 - t >= r}`` with ``r = sqrt(x^2 + y^2)``: two circular cones
glued along the rim ``t = 1/2, r = 1/2``.
"""

from __future__ import annotations

import csv
import math
import os
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .ballgeo import Ball
from .domains import as_point, vpm_contains
from .errors import DomainError, VpmError
from .metrics import hilbert_vpm_unchecked

CSV_HEADER = ("t", "x", "y", "label")
SPHERE_TOL = 1e-10


class LorentzPoint(NamedTuple):
    t: float
    x: float
    y: float


def to_lorentz(Q) -> LorentzPoint:
    Q = np.asarray(Q, dtype=float)
    if Q.shape != (2, 2):
        raise DomainError(f"Lorentz coordinates need a 2x2 matrix, got shape {Q.shape}")
    a, b, c = Q[0, 0], Q[1, 1], 0.5 * (Q[0, 1] + Q[1, 0])
    return LorentzPoint(0.5 * (a + b), 0.5 * (a - b), float(c))


def from_lorentz(p) -> np.ndarray:
    t, x, y = p
    return np.array([[t + x, y], [y, t - x]], dtype=float)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _write_csv(path, rows) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for t, x, y, label in rows:
            w.writerow((_fmt(t), _fmt(x), _fmt(y), label))
    return path


def bicone_boundary(eps: float, resolution: int) -> list[tuple[float, float, float, str]]:
    """Sample both sheets of the boundary of ``-eps I <= X <= (1 + eps) I`` in 2D.

    Each sheet is ``R(theta) diag(l_fixed, l) R(theta)^T`` with the fixed
    eigenvalue ``-eps`` ("lower") or ``1 + eps`` ("upper") and ``l`` sweeping
    the full range. In Lorentz coordinates this is the sheet
    ``t = -eps + r`` (resp. ``t = 1 + eps - r``) with polar angle ``2 theta``.
    Sample ``(i, j)`` of the ``eps`` cloud is the image of sample ``(i, j)`` of
    the ``eps = 0`` cloud under the homothety of ratio ``1 + 2 eps`` about the
    center ``(1/2, 0, 0)``.
    """
    if not eps >= 0:
        raise DomainError(f"epsilon must be >= 0, got {eps!r}")
    if resolution < 8:
        raise DomainError(f"resolution must be >= 8, got {resolution}")
    lo, hi = -eps, 1.0 + eps
    width = hi - lo
    rows = []
    for label, fixed in (("lower", lo), ("upper", hi)):
        for i in range(resolution):
            theta = math.pi * i / resolution
            c, s = math.cos(theta), math.sin(theta)
            for j in range(resolution):
                # the other eigenvalue, ending at the rim but excluding the apex repeat
                frac = (j + 1) / resolution
                other = fixed + frac * width if label == "lower" else fixed - frac * width
                R = np.array([[c, -s], [s, c]])
                Q = R @ np.diag([fixed, other]) @ R.T
                t, x, y = to_lorentz(Q)
                rows.append((t, x, y, label))
    return rows


def export_bicone(eps: float, resolution: int, path: str | os.PathLike) -> Path:
    """Write the boundary cloud of the (enlarged) 2D bicone as CSV ``t,x,y,label``."""
    rows = bicone_boundary(eps, resolution)
    try:
        return _write_csv(path, rows)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def sphere_point(center, direction, radius: float, tol: float = SPHERE_TOL) -> np.ndarray | None:
    """The point ``center + r H`` at Hilbert distance ``radius`` from ``center``.

    Works in any dimension. Returns ``None`` when the radius cannot be reached
    before the segment leaves the certified interior.
    """
    C = as_point(center).mat
    H = np.asarray(direction, dtype=float)
    if radius == 0:
        return C.copy()
    # largest step keeping C + r H strictly inside: bracket by doubling
    hi = 1.0
    while vpm_contains(C + hi * H, 1e-12):
        hi *= 2.0
    lo = 0.0
    # shrink hi to the boundary crossing
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if vpm_contains(C + mid * H, 1e-12):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    r_max = lo
    if hilbert_vpm_unchecked(C, C + r_max * H).value < radius:
        return None
    lo, hi = 0.0, r_max
    P = C
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        P = C + mid * H
        err = hilbert_vpm_unchecked(C, P).value - radius
        if abs(err) <= tol or hi - lo <= 1e-17:
            break
        if err > 0:
            hi = mid
        else:
            lo = mid
    return P


def sphere_directions(resolution: int) -> np.ndarray:
    """``resolution`` unit directions in ``Sym(2)`` from a Fibonacci lattice in ``(t, x, y)``."""
    k = np.arange(resolution) + 0.5
    z = 1.0 - 2.0 * k / resolution
    phi = math.pi * (3.0 - math.sqrt(5.0)) * k
    rho = np.sqrt(1.0 - z * z)
    dirs = np.stack([z, rho * np.cos(phi), rho * np.sin(phi)], axis=1)
    mats = np.array([from_lorentz(d) for d in dirs])
    return mats / np.linalg.norm(mats, axis=(1, 2))[:, None, None]


def ball_boundary(b: Ball, resolution: int, tol: float = SPHERE_TOL) -> tuple[list[tuple[float, float, float, str]], list[int]]:
    """Lorentz coordinates of sampled sphere points, plus indices of skipped directions."""
    if b.center.dim != 2:
        raise DomainError(f"ball export needs a 2x2 center, got {b.center.dim}x{b.center.dim}")
    if resolution < 1:
        raise DomainError(f"resolution must be >= 1, got {resolution}")
    rows, skipped = [], []
    for i, H in enumerate(sphere_directions(resolution)):
        P = sphere_point(b.center, H, b.radius, tol)
        if P is None:
            skipped.append(i)
            continue
        t, x, y = to_lorentz(P)
        rows.append((t, x, y, "sphere"))
    return rows, skipped


def export_ball_boundary(b: Ball, resolution: int, path: str | os.PathLike, tol: float = SPHERE_TOL) -> list[int]:
    """Write the sampled metric sphere of ``b`` as CSV; returns skipped direction indices."""
    rows, skipped = ball_boundary(b, resolution, tol)
    try:
        _write_csv(path, rows)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return skipped


def read_csv(path: str | os.PathLike) -> list[tuple[float, float, float, str]]:
    with Path(path).open(newline="") as fh:
        r = csv.reader(fh)
        header = tuple(next(r))
        if header != CSV_HEADER:
            raise VpmError(f"unexpected CSV header {header}")
        return [(float(t), float(x), float(y), label) for t, x, y, label in r]
