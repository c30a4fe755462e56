import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tdpm.errors import InvalidArgumentError
from tdpm.mds import classical_mds, double_center, embedded_distances
from tdpm.neighbors import pairwise_distances
from tdpm.pipeline import procrustes_error

LINE = np.array([[0.0, 1.0, 2.0]])


def naive_gram(D):
    """-1/2 H D^2 H with an explicit centring matrix."""
    n = len(D)
    H = np.eye(n) - np.ones((n, n)) / n
    return -0.5 * H @ (D ** 2) @ H


def test_double_center_line():
    Y = LINE - LINE.mean()
    B = double_center(pairwise_distances(LINE))
    np.testing.assert_allclose(B, Y.T @ Y, atol=1e-12)
    np.testing.assert_allclose(B, [[1, 0, -1], [0, 0, 0], [-1, 0, 1]], atol=1e-12)


def test_double_center_zero():
    assert np.array_equal(double_center(np.zeros((4, 4))), np.zeros((4, 4)))


@pytest.mark.parametrize("seed", range(5))
def test_double_center_is_gram_of_centered_points(seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(2, 8))
    Y = X - X.mean(axis=1, keepdims=True)
    B = double_center(pairwise_distances(X))
    np.testing.assert_allclose(B, Y.T @ Y, atol=1e-9)
    np.testing.assert_allclose(B, naive_gram(pairwise_distances(X)), atol=1e-9)
    np.testing.assert_allclose(B.sum(axis=1), 0, atol=1e-9)


def test_mds_line():
    emb = classical_mds(pairwise_distances(LINE), 1)
    coords = emb.coordinates[0]
    assert np.allclose(coords, [-1, 0, 1], atol=1e-12) or np.allclose(coords, [1, 0, -1], atol=1e-12)
    np.testing.assert_allclose(emb.eigenvalues, [2, 0, 0], atol=1e-12)


def test_mds_zero():
    emb = classical_mds(np.zeros((5, 5)), 2)
    assert np.array_equal(emb.coordinates, np.zeros((2, 5)))
    assert emb.negative_mass == 0


@pytest.mark.parametrize("seed", range(3))
def test_mds_recovers_planar_points(seed):
    X = np.random.default_rng(seed).normal(size=(2, 10))
    emb = classical_mds(pairwise_distances(X), 2)
    assert procrustes_error(X, emb.coordinates) < 1e-8
    assert emb.negative_mass < 1e-12


def test_non_euclidean_reports_negative_mass():
    D = np.ones((4, 4)) - np.eye(4)
    D[1, 2] = D[2, 1] = 3.0
    oracle = np.linalg.eigvalsh(naive_gram(D))
    assert oracle.min() < -1e-6
    emb = classical_mds(D, 2)
    assert emb.negative_mass > 0
    np.testing.assert_allclose(np.sort(emb.eigenvalues), oracle, atol=1e-10)
    neg = -oracle[oracle < 0].sum()
    assert emb.negative_mass == pytest.approx(neg / np.abs(oracle).sum())


def test_clamped_rows_are_zero():
    D = np.ones((4, 4)) - np.eye(4)
    D[1, 2] = D[2, 1] = 3.0
    emb = classical_mds(D, 3)
    for r, lam in enumerate(emb.eigenvalues[:3]):
        if lam <= 0:
            assert np.all(emb.coordinates[r] == 0)


@pytest.mark.parametrize("d", [0, 5])
def test_dimension_out_of_range(d):
    with pytest.raises(InvalidArgumentError):
        classical_mds(np.zeros((5, 5)), d)


@pytest.mark.parametrize("bad", [
    np.array([[0.0, 1.0], [2.0, 0.0]]),
    np.array([[1.0, 1.0], [1.0, 0.0]]),
    np.array([[0.0, -1.0], [-1.0, 0.0]]),
    np.array([[0.0, np.nan], [np.nan, 0.0]]),
    np.zeros((2, 3)),
])
def test_rejects_invalid_distance_matrices(bad):
    with pytest.raises(InvalidArgumentError):
        classical_mds(bad, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 25), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_embedding_properties(n, q, seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(q, n))
    d = q
    emb = classical_mds(pairwise_distances(X), d)
    assert emb.coordinates.shape == (d, n)
    assert emb.eigenvalues.shape == (n,)
    assert np.all(np.diff(emb.eigenvalues) <= 0)
    assert 0 <= emb.negative_mass <= 1
    assert emb.negative_mass < 1e-10
    np.testing.assert_allclose(emb.coordinates.mean(axis=1), 0, atol=1e-9)
    assert procrustes_error(X, emb.coordinates) < 1e-8
    # sum over ordered pairs of squared distances = 2 n sum of used eigenvalues
    E = embedded_distances(emb)
    lhs = np.sum(E ** 2)
    rhs = 2 * n * np.maximum(emb.eigenvalues[:d], 0).sum()
    assert lhs == pytest.approx(rhs, rel=1e-6, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 15), st.integers(0, 2**32 - 1))
def test_permutation_equivariance(n, seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(3, n))
    D = pairwise_distances(X)
    perm = rng.permutation(n)
    a = classical_mds(D, 2)
    b = classical_mds(D[np.ix_(perm, perm)], 2)
    np.testing.assert_allclose(b.coordinates, a.coordinates[:, perm], atol=1e-8)
