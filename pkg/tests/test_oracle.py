import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vpmgeom.domains import ConeElement, sample_vpm
from vpmgeom.errors import DomainError
from vpmgeom.metrics import hilbert_vpm, hilbert_vpm_eps
from vpmgeom.oracle import birkhoff_bisect, birkhoff_extremes, boundary_intersections, hilbert_cross_ratio

seeds = st.integers(0, 2**32 - 1)


def test_boundary_intersections_interval():
    tm, tp = boundary_intersections([[0.25]], [[0.75]])
    assert tm == pytest.approx(-0.5)
    assert tp == pytest.approx(1.5)


@pytest.mark.parametrize("a, b", [(0.2, 0.4), (0.1, 0.9), (0.6, 0.7)])
def test_boundary_intersections_scalar_multiples(a, b):
    tm, tp = boundary_intersections(a * np.eye(3), b * np.eye(3))
    assert tm == pytest.approx(-a / (b - a), rel=1e-12)
    assert tp == pytest.approx((1 - a) / (b - a), rel=1e-12)


def test_boundary_intersections_rejects():
    with pytest.raises(DomainError):
        boundary_intersections(np.eye(2) / 2, np.eye(2) / 2)
    with pytest.raises(DomainError):
        boundary_intersections(np.eye(2), np.eye(2) / 2)


def test_cross_ratio_examples():
    assert hilbert_cross_ratio([[0.25]], [[0.75]]) == pytest.approx(math.log(9), abs=1e-14)
    A = sample_vpm(3, 0)
    assert hilbert_cross_ratio(A, A) == 0.0


@given(seeds, st.integers(1, 6))
def test_cross_ratio_matches_closed_form(seed, n):
    r = np.random.default_rng(seed)
    A, B = sample_vpm(n, r), sample_vpm(n, r)
    d = hilbert_vpm(A, B).value
    assert abs(hilbert_cross_ratio(A, B) - d) <= 1e-8 * (1 + d)


@given(seeds, st.sampled_from([0.01, 0.1, 1.0]))
def test_cross_ratio_eps_matches_rescaled(seed, eps):
    r = np.random.default_rng(seed)
    A, B = sample_vpm(3, r), sample_vpm(3, r)
    d = hilbert_vpm_eps(A, B, eps)
    assert abs(hilbert_cross_ratio(A, B, eps) - d) <= 1e-8 * (1 + d)


def test_birkhoff_examples():
    v = ConeElement.lift(sample_vpm(3, 5))
    assert birkhoff_bisect(v, v) <= 2e-9
    assert birkhoff_bisect(v, v.scaled(5.0)) <= 2e-9
    d = birkhoff_bisect(ConeElement([[0.25]], 1.0), ConeElement([[0.75]], 1.0))
    assert d == pytest.approx(math.log(9), abs=1e-6)


def test_birkhoff_extremes_order():
    v = ConeElement([[0.25]], 1.0)
    w = ConeElement([[0.75]], 1.0)
    M, m = birkhoff_extremes(v, w)
    assert M >= m > 0


@given(seeds)
def test_birkhoff_matches_closed_form(seed):
    r = np.random.default_rng(seed)
    A, B = sample_vpm(2, r), sample_vpm(2, r)
    d = birkhoff_bisect(ConeElement.lift(A), ConeElement.lift(B, 2.0))
    assert abs(d - hilbert_vpm(A, B).value) <= 1e-6
