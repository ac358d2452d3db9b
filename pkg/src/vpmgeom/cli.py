"""Command-line front end.

Structured results go to stdout as JSON with 17 significant digits per float;
human-readable summaries go to stderr. Exit status is 0 on success, 1 on
domain errors (and failed verification), 2 on I/O or parse errors.
"""

from __future__ import annotations

import argparse
import inspect
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import ballgeo, domains, metrics, transforms, verify, viz
from .errors import VpmError
from .symmat import load_matrix, matrix_from_json, matrix_to_json

TOL_ENV = "VPMGEOM_TOL"

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Unreadable or malformed input; maps to exit status 2."""


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return ballgeo.GEODESIC_TOL
    try:
        return float(raw)
    except ValueError:
        raise InputError(f"{TOL_ENV}={raw!r} is not a number") from None


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return json.dumps(x)
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    if isinstance(obj, (bool, type(None), str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc


def _read_matrix(path: str) -> np.ndarray:
    try:
        return load_matrix(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _parse_matrix(obj, where: str) -> np.ndarray:
    try:
        return matrix_from_json(obj)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def cmd_distance(args) -> int:
    A, B = _read_matrix(args.a), _read_matrix(args.b)
    out = {"metric": args.metric}
    if args.metric == "hilbert-vpm":
        out.update(metrics.hilbert_vpm(A, B).as_dict())
    elif args.metric == "hilbert-vpm-eps":
        out["eps"] = args.eps
        out["value"] = metrics.hilbert_vpm_eps(A, B, args.eps)
    elif args.metric == "birkhoff-pd":
        out["value"] = metrics.birkhoff_pd(A, B)
    else:
        out["value"] = metrics.airm(A, B)
    _emit(out)
    print(f"{args.metric}: {out['value']:.10g}", file=sys.stderr)
    return EXIT_OK


def _suite_kwargs(name: str, args) -> dict:
    kw = {}
    params = inspect.signature(verify.SUITES[name]).parameters
    if args.n is not None:
        if "ns" in params:
            kw["ns"] = (args.n,)
        elif "n" in params:
            kw["n"] = args.n
    if args.trials is not None:
        if "trials" in params:
            kw["trials"] = args.trials
        elif "sets" in params:
            kw["sets"] = args.trials
    if "seed" in params:
        kw["seed"] = args.seed
    return kw


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    results = [verify.SUITES[name](**_suite_kwargs(name, args)) for name in names]
    for r in results:
        for c in r.checks:
            mark = "PASS" if c.passed else "FAIL"
            print(f"{mark}  {r.suite:<9} {c.name:<52} max={c.value:.3e}  tol={c.tolerance:g}", file=sys.stderr)
    ok = all(r.passed for r in results)
    _emit({"passed": ok, "suites": [r.as_dict() for r in results]})
    return EXIT_OK if ok else EXIT_DOMAIN


def _read_point_list(path: str) -> list[np.ndarray]:
    data = _read_json(path)
    if not isinstance(data, list) or not data:
        raise InputError(f"{path}: expected a non-empty JSON array of matrices")
    return [_parse_matrix(m, f"{path}[{i}]") for i, m in enumerate(data)]


def cmd_seb(args) -> int:
    pts = _read_point_list(args.points)
    tol = args.tol if args.tol is not None else _default_tol()
    ball = ballgeo.seb_badoiu_clarkson(pts, args.iters, args.seed, tol)
    _emit({"center": matrix_to_json(ball.center.mat), "radius": ball.radius, "iters": args.iters, "seed": args.seed})
    print(f"seb: radius {ball.radius:.10g} after {args.iters} iterations", file=sys.stderr)
    return EXIT_OK


def cmd_embed(args) -> int:
    data = _read_json(args.gaussian)
    if not isinstance(data, dict) or "mean" not in data or "cov" not in data:
        raise InputError(f'{args.gaussian}: expected an object with "mean" and "cov"')
    cov = _parse_matrix(data["cov"], f"{args.gaussian}: cov")
    try:
        mean = np.asarray(data["mean"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{args.gaussian}: mean: {exc}") from exc
    E = transforms.calvo_oller(transforms.GaussianParams(mean, cov))
    _emit({"embedded": matrix_to_json(E), "t1": matrix_to_json(transforms.t1_covariance(E))})
    return EXIT_OK


def cmd_export(args) -> int:
    if args.what == "bicone":
        viz.export_bicone(args.eps, args.resolution, args.out)
        _emit({"what": "bicone", "eps": args.eps, "resolution": args.resolution, "out": str(args.out)})
        return EXIT_OK
    if args.ball is None:
        raise InputError("--what ball needs --ball <json with center and radius>")
    data = _read_json(args.ball)
    if not isinstance(data, dict) or "center" not in data or "radius" not in data:
        raise InputError(f'{args.ball}: expected an object with "center" and "radius"')
    center = _parse_matrix(data["center"], f"{args.ball}: center")
    ball = ballgeo.Ball(domains.as_point(center), float(data["radius"]))
    tol = args.tol if args.tol is not None else _default_tol()
    skipped = viz.export_ball_boundary(ball, args.resolution, args.out, tol)
    if skipped:
        print(f"export: {len(skipped)} directions skipped (radius beyond the boundary)", file=sys.stderr)
    _emit({"what": "ball", "resolution": args.resolution, "out": str(args.out), "skipped": skipped})
    return EXIT_OK


def cmd_sample(args) -> int:
    p = domains.sample_vpm(args.n, args.seed, args.delta)
    _emit(matrix_to_json(p.mat))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vpmgeom", description="Hilbert geometry of the variance-precision bicone.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="distance between two JSON matrices")
    p.add_argument("--metric", choices=["hilbert-vpm", "hilbert-vpm-eps", "birkhoff-pd", "airm"], default="hilbert-vpm")
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("verify", help="run seeded verification suites")
    p.add_argument("--suite", choices=["all", *verify.SUITES], default="all")
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("seb", help="approximate smallest enclosing Hilbert ball")
    p.add_argument("points", help="JSON array of matrices")
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, help=f"geodesic bisection tolerance (default: ${TOL_ENV} or 1e-10)")
    p.set_defaults(func=cmd_seb)

    p = sub.add_parser("embed", help="embed a Gaussian into PD(n+1) and the bicone")
    p.add_argument("gaussian", help='JSON {"mean": [...], "cov": matrix}')
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("export", help="write CSV point clouds for 2D figures")
    p.add_argument("--what", choices=["bicone", "ball"], required=True)
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--resolution", type=int, default=32)
    p.add_argument("--ball", help="JSON with center and radius (as written by `seb`)")
    p.add_argument("--tol", type=float, help=f"sphere bisection tolerance (default: ${TOL_ENV} or 1e-10)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("sample", help="draw a seeded random bicone point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=0.05)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VpmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
