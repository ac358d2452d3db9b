"""Seeded verification suites, shared by the ``verify`` CLI and the acceptance tests.

Each suite returns a :class:`SuiteResult`: a list of named checks, each with
the worst deviation observed and the tolerance it is held to.
"""

from __future__ import annotations

import math
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import ballgeo, domains, metrics, oracle, transforms, viz
from .domains import ConeElement, sample_vpm
from .symmat import random_orthogonal

# A, B in VPM(2) and M in GL(2) with M^T A M, M^T B M in VPM(2) but a
# different Hilbert distance: log 9 before, about 0.5026 after.
GL_WITNESS = {
    "A": np.diag([0.7, 0.9]),
    "B": np.diag([0.9, 0.7]),
    "M": np.diag([0.5, 0.5]),
}


@dataclass
class Check:
    name: str
    value: float  # worst observed deviation (or count)
    tolerance: float
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "max_deviation": self.value,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add_max(self, name: str, devs, tol: float, detail: str = "") -> Check:
        worst = float(np.max(devs)) if len(devs) else 0.0
        c = Check(name, worst, tol, bool(worst <= tol), detail)
        self.checks.append(c)
        return c

    def add_flag(self, name: str, ok: bool, value: float = 0.0, tol: float = 0.0, detail: str = "") -> Check:
        c = Check(name, float(value), tol, bool(ok), detail)
        self.checks.append(c)
        return c

    def as_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checks": [c.as_dict() for c in self.checks]}


def _random_pd(n: int, rng: np.random.Generator, lo: float = 0.1, hi: float = 10.0) -> np.ndarray:
    U = random_orthogonal(n, rng)
    w = np.exp(rng.uniform(math.log(lo), math.log(hi), size=n))
    return (U * w) @ U.T


def _random_gl(n: int, rng: np.random.Generator) -> np.ndarray:
    U, V = random_orthogonal(n, rng), random_orthogonal(n, rng)
    s = np.exp(rng.uniform(math.log(0.5), math.log(2.0), size=n))
    return (U * s) @ V


def suite_oracle(ns=(1, 2, 3, 5, 10), trials: int = 1000, seed: int = 0, delta: float = 0.05) -> SuiteResult:
    """Closed form vs cross-ratio and vs Birkhoff bisection on the lifted cone."""
    res = SuiteResult("oracle")
    for n in ns:
        rng = np.random.default_rng([seed, n])
        cross, bisect, top = [], [], []
        for _ in range(trials):
            A, B = sample_vpm(n, rng, delta), sample_vpm(n, rng, delta)
            rep = metrics.hilbert_vpm(A, B)
            d = rep.value
            cross.append(abs(oracle.hilbert_cross_ratio(A, B) - d) / (1.0 + d))
            M, m = oracle.birkhoff_extremes(ConeElement.lift(A), ConeElement.lift(B))
            bisect.append(abs(math.log(M / m) - d))
            top.append(abs(M - max(rep.lambda_max, rep.mu_max)))
        res.add_max(f"cross-ratio n={n}", cross, 1e-8, "|closed - cross| / (1 + d)")
        res.add_max(f"birkhoff-bisection n={n}", bisect, 1e-6, "|closed - log(M/m)|")
        res.add_max(f"birkhoff-M n={n}", top, 1e-6, "|M - max(lambda_max, mu_max)|")
    return res


def suite_interval(grid: int = 10) -> SuiteResult:
    res = SuiteResult("interval")
    xs = (np.arange(grid) + 0.5) / grid
    devs = [
        abs(metrics.hilbert_vpm([[x]], [[y]]).value - abs(math.log((1 - x) * y / (x * (1 - y)))))
        for x in xs
        for y in xs
    ]
    res.add_max(f"1x1 reduction ({len(devs)} points)", devs, 1e-12)
    return res


def suite_isometry(ns=(2, 3, 5), trials: int = 1000, seed: int = 0, delta: float = 0.05) -> SuiteResult:
    res = SuiteResult("isometry")
    for n in ns:
        rng = np.random.default_rng([seed, n, 3])
        comp, conj = [], []
        for _ in range(trials):
            A, B = sample_vpm(n, rng, delta).mat, sample_vpm(n, rng, delta).mat
            U = random_orthogonal(n, rng)
            d = metrics.hilbert_vpm(A, B).value
            comp.append(abs(metrics.hilbert_vpm(transforms.complement(A), transforms.complement(B)).value - d))
            conj.append(abs(metrics.hilbert_vpm(transforms.conjugate(A, U), transforms.conjugate(B, U)).value - d))
        res.add_max(f"identity-complement n={n}", comp, 1e-10)
        res.add_max(f"orthonormal-conjugation n={n}", conj, 1e-10)
    A, B, M = GL_WITNESS["A"], GL_WITNESS["B"], GL_WITNESS["M"]
    a, b = M.T @ A @ M, M.T @ B @ M
    inside = domains.vpm_contains(a) and domains.vpm_contains(b)
    change = abs(metrics.hilbert_vpm(a, b).value - metrics.hilbert_vpm(A, B).value)
    res.add_flag("GL(2) congruence witness", inside and change > 0.1, change, 0.1, "distance change must exceed 0.1")
    return res


def suite_metric(ns=(2, 3, 5), trials: int = 1000, seed: int = 0, delta: float = 0.05) -> SuiteResult:
    res = SuiteResult("metric")
    for n in ns:
        rng = np.random.default_rng([seed, n, 4])
        symm, tri, neg = [], [], []
        for _ in range(trials):
            A, B, C = (sample_vpm(n, rng, delta) for _ in range(3))
            dab = metrics.hilbert_vpm(A, B).value
            dba = metrics.hilbert_vpm(B, A).value
            dbc = metrics.hilbert_vpm(B, C).value
            dac = metrics.hilbert_vpm(A, C).value
            symm.append(abs(dab - dba))
            tri.append(max(0.0, dac - dab - dbc))
            neg.append(max(0.0, -min(dab, dbc, dac)))
        res.add_max(f"symmetry n={n}", symm, 1e-10)
        res.add_max(f"triangle n={n}", tri, 1e-9, "excess of d(A,C) over d(A,B) + d(B,C)")
        res.add_max(f"nonnegativity n={n}", neg, 0.0)
    return res


def _boundary_matrix(n: int, rng: np.random.Generator, which: str) -> np.ndarray:
    U = random_orthogonal(n, rng)
    w = rng.uniform(0.1, 0.9, size=n)
    if which in ("zero", "both"):
        w[0] = 0.0
    if which in ("one", "both") and n > 1:
        w[-1] = 1.0
    return (U * w) @ U.T


def suite_eps(n: int = 3, trials: int = 1000, seed: int = 0, delta: float = 0.05, epsilons=(0.01, 0.1, 1.0)) -> SuiteResult:
    res = SuiteResult("eps")
    rng = np.random.default_rng([seed, n, 5])
    pairs = [(sample_vpm(n, rng, delta).mat, sample_vpm(n, rng, delta).mat) for _ in range(trials)]
    base = [metrics.hilbert_vpm(A, B).value for A, B in pairs]
    for eps in epsilons:
        excess, cross = [], []
        for (A, B), d in zip(pairs, base):
            de = metrics.hilbert_vpm_eps(A, B, eps)
            excess.append(max(0.0, de - d))
            cross.append(abs(oracle.hilbert_cross_ratio(A, B, eps) - de) / (1.0 + de))
        res.add_max(f"d_eps <= d, eps={eps:g}", excess, 0.0)
        res.add_max(f"d_eps vs cross-ratio, eps={eps:g}", cross, 1e-8)
    finite = []
    kinds = ("zero", "one", "both")
    for i in range(3 * 30):
        S1 = _boundary_matrix(n, rng, kinds[i % 3])
        S2 = _boundary_matrix(n, rng, kinds[(i // 3) % 3]) if i % 2 else sample_vpm(n, rng, delta).mat
        finite.append(metrics.hilbert_vpm_eps(S1, S2, 0.1))
    ok = all(math.isfinite(v) for v in finite)
    res.add_flag("d_0.1 finite with boundary points", ok, max(finite), math.inf, f"{len(finite)} pairs")
    return res


def _fd_dev(f, df, X, H, h=1e-5) -> float:
    fd = (f(X + h * H) - f(X - h * H)) / (2 * h)
    return float(np.max(np.abs(fd - df(X, H))))


def suite_iota(n: int = 3, trials: int = 200, seed: int = 0) -> SuiteResult:
    res = SuiteResult("iota")
    rng = np.random.default_rng([seed, n, 6])
    rt1, rt2, pull, conj, dfd, dfd_inv = [], [], [], [], [], []
    for _ in range(trials):
        X = _random_pd(n, rng)
        # central-difference truncation error is about h^2 / (1 - lambda_max)^4 for
        # iota_inv along a unit direction; margin 0.1 keeps it below 1e-5 at h = 1e-5
        A = sample_vpm(n, rng, 0.1).mat
        U = random_orthogonal(n, rng)
        H = rng.standard_normal((n, n))
        H = H + H.T
        H /= np.linalg.norm(H)
        rt1.append(np.max(np.abs(transforms.iota_inv(transforms.iota(X)) - X)))
        rt2.append(np.max(np.abs(transforms.iota(transforms.iota_inv(A)) - A)))
        pull.append(np.max(np.abs(transforms.iota_inv(transforms.complement(transforms.iota(X))) - np.linalg.inv(X))))
        conj.append(
            np.max(np.abs(transforms.conjugate(transforms.iota(X), U) - transforms.iota(transforms.conjugate(X, U))))
        )
        dfd.append(_fd_dev(transforms.iota, transforms.d_iota, X, H))
        dfd_inv.append(_fd_dev(transforms.iota_inv, transforms.d_iota_inv, A, H))
    res.add_max("iota_inv(iota(X)) = X", rt1, 1e-10)
    res.add_max("iota(iota_inv(A)) = A", rt2, 1e-10)
    res.add_max("iota_inv(I - iota(X)) = X^-1", pull, 1e-10)
    res.add_max("U^T iota(X) U = iota(U^T X U)", conj, 1e-10)
    res.add_max("d_iota vs central differences", dfd, 1e-5)
    res.add_max("d_iota_inv vs central differences", dfd_inv, 1e-5)
    return res


def suite_airm(n: int = 3, trials: int = 500, seed: int = 0) -> SuiteResult:
    res = SuiteResult("airm")
    rng = np.random.default_rng([seed, n, 7])
    inv, cong = [], []
    for _ in range(trials):
        Q1, Q2 = _random_pd(n, rng), _random_pd(n, rng)
        G = _random_gl(n, rng)
        d = metrics.airm(Q1, Q2)
        inv.append(abs(metrics.airm(np.linalg.inv(Q1), np.linalg.inv(Q2)) - d))
        cong.append(abs(metrics.airm(G @ Q1 @ G.T, G @ Q2 @ G.T) - d))
    res.add_max("inversion", inv, 1e-9)
    res.add_max("GL congruence", cong, 1e-9)
    return res


def suite_seb(sets: int = 3, points: int = 10, iterations: int = 2000, seed: int = 0) -> SuiteResult:
    res = SuiteResult("seb")
    b = ballgeo.seb_badoiu_clarkson([[[0.25]], [[0.75]]], iterations)
    res.add_max("1D two-point center", [abs(b.center.mat[0, 0] - 0.5)], 1e-3)
    res.add_max("1D two-point radius", [abs(b.radius - math.log(3.0))], 1e-3)
    rng = np.random.default_rng([seed, 8])
    lower, rises = [], []
    for _ in range(sets):
        pts = [sample_vpm(2, rng, 0.05) for _ in range(points)]
        ball = ballgeo.seb_badoiu_clarkson(pts, iterations, seed)
        diam = max(metrics.hilbert_vpm(p, q).value for p in pts for q in pts)
        lower.append(max(0.0, diam / 2 - ball.radius))
        tail = np.asarray(ball.trace[-max(2, len(ball.trace) // 10):])
        rises.append(max(0.0, float(np.max(np.diff(tail)))))
    res.add_max("radius >= max pairwise / 2", lower, 1e-9)
    res.add_max("radius trace nonincreasing (final 10%)", rises, 1e-6, "largest rise of max-distance at c_k")
    return res


def suite_lorentz(grid: int = 100, resolution: int = 32, seed: int = 0) -> SuiteResult:
    res = SuiteResult("lorentz")
    rng = np.random.default_rng([seed, 9])
    # dyadic entries round-trip exactly; random ones to within rounding
    dy = rng.integers(-1024, 1025, size=(1000, 3)) / 1024.0
    exact = all(
        np.array_equal(viz.from_lorentz(viz.to_lorentz(Q)), Q)
        for Q in (np.array([[a, c], [c, b]]) for a, b, c in dy)
    )
    res.add_flag("round trip exact (dyadic entries)", exact)
    rand = rng.uniform(-1, 1, size=(1000, 3))
    rt = [np.max(np.abs(viz.from_lorentz(viz.to_lorentz(Q)) - Q)) for Q in (np.array([[a, c], [c, b]]) for a, b, c in rand)]
    res.add_max("round trip (random entries)", rt, 4 * np.finfo(float).eps)

    # grid of grid x grid points: on-sheet and off-sheet in equal measure
    mismatches = 0
    total = 0
    for i in range(grid):
        for j in range(grid):
            r = 0.5 * (i + 0.5) / grid
            ang = 2 * math.pi * j / grid
            kind = (i + j) % 4
            t = {0: r, 1: 1.0 - r, 2: 0.5, 3: r + 0.5 * (0.5 - r)}[kind]
            x, y = r * math.cos(ang), r * math.sin(ang)
            w = np.linalg.eigvalsh(viz.from_lorentz((t, x, y)))
            rad = math.hypot(x, y)
            eig_lower, eig_upper = abs(w[0]) <= 1e-9, abs(w[1] - 1.0) <= 1e-9
            sheet_lower, sheet_upper = abs(t - rad) <= 1e-9, abs(1.0 - t - rad) <= 1e-9
            mismatches += (eig_lower != sheet_lower) + (eig_upper != sheet_upper)
            total += 1
    res.add_max(f"boundary correspondence ({total} points)", [mismatches], 0.0, "mismatched sheet classifications")

    with tempfile.TemporaryDirectory() as tmp:
        p0 = viz.export_bicone(0.0, resolution, Path(tmp) / "b0.csv")
        p1 = viz.export_bicone(0.1, resolution, Path(tmp) / "b1.csv")
        rows0, rows1 = viz.read_csv(p0), viz.read_csv(p1)
    center = np.array([0.5, 0.0, 0.0])
    misaligned, not_enclosed = [], []
    for r0, r1 in zip(rows0, rows1):
        v0, v1 = np.array(r0[:3]) - center, np.array(r1[:3]) - center
        n0, n1 = np.linalg.norm(v0), np.linalg.norm(v1)
        misaligned.append(1.0 - float(v0 @ v1) / (n0 * n1))
        not_enclosed.append(max(0.0, n0 - n1 + 1e-12))
    res.add_max("eps=0.1 and eps=0 samples share directions", misaligned, 1e-12, "1 - cosine")
    res.add_flag("eps=0.1 radially encloses eps=0", max(not_enclosed) == 0.0 and len(rows0) == len(rows1))
    return res


def suite_dual(n: int = 3, trials: int = 100_000, primal: int = 1000, seed: int = 0, margin: float = 1e-8) -> SuiteResult:
    """Dual-cone formula vs brute-force inner-product positivity.

    The (Y, s) samples share their eigenbases with a fixed pool of rotations,
    and the primal sample contains near-vertex points of the bicone in each
    pooled basis. Those vertices are where ``tr(ZY)`` approaches its infimum,
    so a finite primal sample can certify non-membership.
    """
    res = SuiteResult("dual")
    rng = np.random.default_rng([seed, n, 10])
    pool = [random_orthogonal(n, rng) for _ in range(10)]
    shrink = 1e-10
    prim_X, prim_t = [], []
    for U in pool:
        for bits in range(2 ** n):
            v = np.array([(1.0 - shrink) if bits >> i & 1 else shrink for i in range(n)])
            t = rng.uniform(0.1, 10.0)
            prim_X.append(t * (U.T * v) @ U)
            prim_t.append(t)
    while len(prim_X) < primal:
        t = rng.uniform(0.1, 10.0)
        prim_X.append(t * sample_vpm(n, rng, 0.01).mat)
        prim_t.append(t)
    prim_X = np.array(prim_X[:primal]).reshape(primal, -1)
    prim_t = np.array(prim_t[:primal])

    disagreements = skipped = 0
    chunk = 5000
    for start in range(0, trials, chunk):
        m = min(chunk, trials - start)
        ks = rng.integers(len(pool), size=m)
        ys = rng.standard_normal((m, n))
        threshold = -np.where(ys < 0, ys, 0.0).sum(axis=1)
        ss = threshold + rng.uniform(-1.0, 1.0, size=m)
        Ys = np.array([(pool[k].T * y) @ pool[k] for k, y in zip(ks, ys)])
        inner = Ys.reshape(m, -1) @ prim_X.T + np.outer(ss, prim_t)
        brute = np.all(inner > 0, axis=1)
        for Y, s, thr, b in zip(Ys, ss, threshold, brute):
            if abs(s - thr) <= margin:
                skipped += 1
                continue
            disagreements += domains.dual_cone_contains(ConeElement(Y, s)) != bool(b)
    res.add_max(f"formula vs inner products ({trials} pairs x {primal} primal)", [disagreements], 0.0,
                f"disagreements; {skipped} pairs within margin {margin:g} skipped")

    Y, s = 5.0 * np.eye(n), 0.1
    e = ConeElement(Y, s)
    in_dual = domains.dual_cone_contains(e) and bool(np.all(prim_X @ Y.ravel() + s * prim_t > 0))
    res.add_flag("dual member with slice outside VPM", in_dual and not domains.vpm_contains(Y / s),
                 detail="(5 I, 0.1): Y/s = 50 I")
    return res


def suite_domain(ns=(2, 3, 5), trials: int = 1000, seed: int = 0) -> SuiteResult:
    res = SuiteResult("domain")
    for n in ns:
        rng = np.random.default_rng([seed, n, 11])
        bound, seg, auto = [], [], []
        for _ in range(trials):
            A = sample_vpm(n, rng, rng.uniform(1e-6, 0.49)).mat
            B = sample_vpm(n, rng, rng.uniform(1e-6, 0.49)).mat
            fro2, tr = float(np.sum(A * A)), float(np.trace(A))
            bound.append(max(0.0, fro2 - tr, tr - n))
            c = rng.uniform()
            seg.append(0.0 if domains.vpm_contains(c * A + (1 - c) * B) else 1.0)
            U = random_orthogonal(n, rng)
            ok = domains.vpm_contains(transforms.complement(A)) and domains.vpm_contains(transforms.conjugate(A, U))
            auto.append(0.0 if ok else 1.0)
        res.add_max(f"|A|_F^2 <= tr A <= n, n={n}", bound, 0.0)
        res.add_max(f"segment membership n={n}", seg, 0.0, "failures")
        res.add_max(f"automorphism closure n={n}", auto, 0.0, "failures")
    return res


SUITES = {
    "oracle": suite_oracle,
    "interval": suite_interval,
    "isometry": suite_isometry,
    "metric": suite_metric,
    "eps": suite_eps,
    "iota": suite_iota,
    "airm": suite_airm,
    "seb": suite_seb,
    "lorentz": suite_lorentz,
    "dual": suite_dual,
    "domain": suite_domain,
}
