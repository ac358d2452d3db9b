import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vpmgeom.domains import sample_vpm, vpm_contains
from vpmgeom.errors import DomainError
from vpmgeom.metrics import hilbert_vpm
from vpmgeom.symmat import random_orthogonal
from vpmgeom.transforms import (
    GaussianParams,
    calvo_oller,
    complement,
    conjugate,
    d_iota,
    d_iota_inv,
    iota,
    iota_inv,
    mobius,
    mobius_eigenvalues,
    t1_covariance,
    t2_precision,
)

seeds = st.integers(0, 2**32 - 1)


def _pd(r, n):
    M = r.standard_normal((n, n))
    return M @ M.T + 0.1 * np.eye(n)


@pytest.mark.parametrize(
    "X, expected",
    [(np.eye(2), np.eye(2) / 2), (np.diag([1.0, 3.0]), np.diag([0.5, 0.75]))],
)
def test_iota_examples(X, expected):
    np.testing.assert_allclose(iota(X), expected, atol=1e-15)
    np.testing.assert_allclose(iota_inv(expected), X, atol=1e-14)


def test_d_iota_at_identity():
    H = np.array([[1.0, 2.0], [2.0, -3.0]])
    np.testing.assert_allclose(d_iota(np.eye(2), H), H / 4, atol=1e-15)


def test_t1_t2_examples():
    np.testing.assert_allclose(t2_precision(np.eye(2)), np.eye(2) / 2)
    np.testing.assert_allclose(t2_precision(np.diag([1.0, 3.0])), np.diag([0.5, 0.25]))
    np.testing.assert_allclose(t1_covariance(np.diag([1.0, 3.0])), np.diag([0.5, 0.75]))


@given(seeds)
def test_t1_t2_agree_on_inverse_pair(seed):
    # covariance S and its precision S^-1 land on the same bicone point
    S = _pd(np.random.default_rng(seed), 3)
    np.testing.assert_allclose(t1_covariance(S), t2_precision(np.linalg.inv(S)), atol=1e-9)
    np.testing.assert_allclose(t1_covariance(S) + t2_precision(S), np.eye(3), atol=1e-12)


@given(seeds)
def test_iota_round_trip_and_inversion(seed):
    r = np.random.default_rng(seed)
    X = _pd(r, 3)
    assert vpm_contains(iota(X))
    np.testing.assert_allclose(iota_inv(iota(X)), X, rtol=1e-10, atol=1e-10 * np.max(np.abs(X)))
    np.testing.assert_allclose(iota_inv(np.eye(3) - iota(X)), np.linalg.inv(X), atol=1e-8 * np.linalg.cond(X))


@given(seeds)
def test_iota_equivariant(seed):
    r = np.random.default_rng(seed)
    X, U = _pd(r, 3), random_orthogonal(3, r)
    np.testing.assert_allclose(U.T @ iota(X) @ U, iota(U.T @ X @ U), atol=1e-12)


def test_differentials_match_finite_differences():
    r = np.random.default_rng(1)
    X = _pd(r, 3)
    A = sample_vpm(3, r, 0.1).mat
    H = r.standard_normal((3, 3))
    H = H + H.T
    H /= np.linalg.norm(H)
    h = 1e-5
    fd = (iota(X + h * H) - iota(X - h * H)) / (2 * h)
    np.testing.assert_allclose(d_iota(X, H), fd, atol=1e-5)
    fd = (iota_inv(A + h * H) - iota_inv(A - h * H)) / (2 * h)
    np.testing.assert_allclose(d_iota_inv(A, H), fd, atol=1e-5)


def test_iota_domain_errors():
    with pytest.raises(DomainError):
        iota(np.diag([1.0, -1.0]))
    with pytest.raises(DomainError):
        iota_inv(np.eye(2))


def test_mobius_examples():
    A = sample_vpm(2, 0).mat
    np.testing.assert_allclose(mobius(A, A), np.eye(2), atol=1e-14)
    B = sample_vpm(2, 1).mat
    np.testing.assert_allclose(mobius(np.zeros((2, 2)), B), np.eye(2) - B)
    assert mobius([[0.25]], [[0.75]])[0, 0] == pytest.approx(1 / 3)


@given(seeds)
def test_mobius_spectrum(seed):
    r = np.random.default_rng(seed)
    A, B = sample_vpm(3, r).mat, sample_vpm(3, r).mat
    w = np.sort(np.linalg.eigvals(mobius(A, B)).real)
    np.testing.assert_allclose(mobius_eigenvalues(A, B), w, rtol=1e-9)


@given(seeds)
def test_isometries(seed):
    r = np.random.default_rng(seed)
    A, B = sample_vpm(3, r), sample_vpm(3, r)
    U = random_orthogonal(3, r)
    d = hilbert_vpm(A, B).value
    assert hilbert_vpm(complement(A), complement(B)).value == pytest.approx(d, abs=1e-10)
    assert hilbert_vpm(conjugate(A, U), conjugate(B, U)).value == pytest.approx(d, abs=1e-10)


def test_conjugate_rejects_non_orthonormal():
    with pytest.raises(DomainError):
        conjugate(np.eye(2) / 2, 2 * np.eye(2))


def test_calvo_oller_examples():
    np.testing.assert_array_equal(calvo_oller(GaussianParams(np.zeros(3), np.eye(3))), np.eye(4))
    np.testing.assert_array_equal(calvo_oller(GaussianParams([1.0], [[1.0]])), [[2.0, 1.0], [1.0, 1.0]])


def test_gaussian_validation():
    with pytest.raises(DomainError):
        GaussianParams([0.0, 0.0], np.eye(3))
    with pytest.raises(DomainError):
        GaussianParams([0.0, 0.0], np.diag([1.0, 0.0]))
