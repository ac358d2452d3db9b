import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vpmgeom.ballgeo import Ball
from vpmgeom.domains import VpmPoint, sample_vpm
from vpmgeom.errors import DomainError
from vpmgeom.metrics import hilbert_vpm
from vpmgeom.viz import (
    CSV_HEADER,
    ball_boundary,
    bicone_boundary,
    export_ball_boundary,
    export_bicone,
    from_lorentz,
    read_csv,
    sphere_point,
    to_lorentz,
)


def test_to_lorentz_examples():
    assert to_lorentz(np.eye(2) / 2) == (0.5, 0.0, 0.0)
    t, x, y = to_lorentz(np.diag([1.0, 0.0]))
    assert (t, x, y) == (0.5, 0.5, 0.0)
    assert t == math.hypot(x, y)


def test_from_lorentz_examples():
    np.testing.assert_array_equal(from_lorentz((0.5, 0.0, 0.0)), np.eye(2) / 2)
    np.testing.assert_array_equal(from_lorentz((1.0, 0.0, 0.0)), np.eye(2))


def test_to_lorentz_needs_2x2():
    with pytest.raises(DomainError):
        to_lorentz(np.eye(3))


@given(st.integers(-2**20, 2**20), st.integers(-2**20, 2**20), st.integers(-2**20, 2**20))
def test_round_trip_exact_on_dyadics(a, b, c):
    Q = np.array([[a, c], [c, b]]) / 2**10
    assert np.array_equal(from_lorentz(to_lorentz(Q)), Q)


def test_bicone_sheets_on_boundary():
    for t, x, y, label in bicone_boundary(0.0, 16):
        r = math.hypot(x, y)
        w = np.linalg.eigvalsh(from_lorentz((t, x, y)))
        if label == "lower":
            assert t == pytest.approx(r, abs=1e-12)
            assert w[0] == pytest.approx(0.0, abs=1e-12)
        else:
            assert 1 - t == pytest.approx(r, abs=1e-12)
            assert w[-1] == pytest.approx(1.0, abs=1e-12)


def test_bicone_eps_encloses():
    inner = bicone_boundary(0.0, 16)
    outer = bicone_boundary(0.1, 16)
    assert len(inner) == len(outer) == 2 * 16 * 16
    for (t0, x0, y0, _), (t1, x1, y1, _) in zip(inner, outer):
        assert math.dist((t1, x1, y1), (0.5, 0, 0)) >= math.dist((t0, x0, y0), (0.5, 0, 0)) - 1e-12


def test_bicone_validation():
    with pytest.raises(DomainError):
        bicone_boundary(-0.1, 16)
    with pytest.raises(DomainError):
        bicone_boundary(0.0, 2)


def test_export_bicone_format(tmp_path):
    p = export_bicone(0.1, 8, tmp_path / "b.csv")
    raw = p.read_bytes()
    assert b"\r" not in raw
    assert raw.splitlines()[0] == b"t,x,y,label"
    rows = read_csv(p)
    assert len(rows) == 2 * 8 * 8
    assert {r[3] for r in rows} == {"lower", "upper"}
    # 17 significant digits round-trip exactly
    assert rows == [tuple(r) for r in bicone_boundary(0.1, 8)]


def test_sphere_point_distance():
    c = sample_vpm(2, 3)
    H = np.array([[1.0, 0.2], [0.2, -0.5]])
    P = sphere_point(c, H, 0.4)
    assert abs(hilbert_vpm(c.mat, P).value - 0.4) <= 1e-8


def test_sphere_point_unreachable():
    c = VpmPoint(np.diag([0.5, 0.5]))
    assert sphere_point(c, np.eye(2), 100.0) is None


def test_ball_radius_zero():
    c = sample_vpm(2, 0)
    rows, skipped = ball_boundary(Ball(c, 0.0), 12)
    assert skipped == []
    assert all(r[:3] == tuple(to_lorentz(c.mat)) for r in rows)


def test_ball_export_on_sphere(tmp_path):
    c = sample_vpm(2, 5)
    b = Ball(c, 0.7)
    skipped = export_ball_boundary(b, 40, tmp_path / "s.csv")
    rows = read_csv(tmp_path / "s.csv")
    assert len(rows) + len(skipped) == 40
    for t, x, y, label in rows:
        assert label == "sphere"
        assert abs(hilbert_vpm(c.mat, from_lorentz((t, x, y))).value - 0.7) <= 1e-8


def test_sphere_n1_endpoints():
    c = VpmPoint([[0.5]])
    pts = sorted(float(sphere_point(c, [[s]], math.log(3))[0, 0]) for s in (1.0, -1.0))
    assert pts == pytest.approx([0.25, 0.75], abs=1e-9)


def test_ball_export_needs_2x2():
    with pytest.raises(DomainError):
        ball_boundary(Ball(sample_vpm(3, 0), 0.1), 8)


def test_csv_header_constant():
    assert CSV_HEADER == ("t", "x", "y", "label")
