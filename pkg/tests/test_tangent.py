import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import eigh, subspace_angles
from scipy.optimize import least_squares
from scipy.stats import special_ortho_group

from tdpm.dataset import generate_plane, generate_s_curve, generate_swiss_roll
from tdpm.errors import DegenerateNeighborhoodError, InvalidArgumentError
from tdpm.neighbors import knn, pairwise_distances
from tdpm.tangent import (symmetrize, tangent_bases, tangent_basis, tangent_distance,
                          tangent_distance_matrix)


def lstsq_tangent_distance(x0, P, x):
    """Minimise ||x0 + P a - x|| without assuming P is orthonormal."""
    a, *_ = np.linalg.lstsq(P, x - x0, rcond=None)
    return np.linalg.norm(x0 + P @ a - x), a


def iterative_tangent_distance(x0, P, x):
    res = least_squares(lambda a: x0 + P @ a - x, np.zeros(P.shape[1]),
                        jac=lambda a: P, xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return np.linalg.norm(res.fun), res.x


def random_instance(rng, m, d):
    P, _ = np.linalg.qr(rng.normal(size=(m, d)))
    return rng.normal(size=m), P, rng.normal(size=m)


class TestTangentBasis:
    def test_collinear(self):
        X = np.array([[1.0, 2.0, 3.0], [1.0, 2.0, 3.0]])
        tb = tangent_basis(X, [0, 1, 2], 1)
        np.testing.assert_allclose(tb.basis[:, 0], [2**-0.5, 2**-0.5], atol=1e-15)

    def test_square_spans_xy(self):
        X = np.array([[0.0, 1.0, 1.0, 0.0], [0.0, 0.0, 1.0, 1.0], [0.0] * 4])
        P = tangent_basis(X, [0, 1, 2, 3], 2).basis
        np.testing.assert_allclose(P @ P.T, np.diag([1.0, 1.0, 0.0]), atol=1e-10)

    def test_noisy_plane_against_covariance_oracle(self):
        rng = np.random.default_rng(11)
        true = np.linalg.qr(rng.normal(size=(3, 2)))[0]
        X = true @ rng.uniform(-1, 1, size=(2, 12)) + 1e-3 * rng.normal(size=(3, 12))
        tb = tangent_basis(X, range(12), 2)
        # oracle: top eigenvectors of the scatter matrix (independent of the SVD route)
        C = X - X.mean(axis=1, keepdims=True)
        w, V = eigh(C @ C.T)
        oracle = V[:, np.argsort(w)[::-1][:2]]
        np.testing.assert_allclose(tb.basis @ tb.basis.T, oracle @ oracle.T, atol=1e-10)
        np.testing.assert_allclose(tb.singular_values, np.sqrt(np.sort(w)[::-1][:2]), rtol=1e-10)
        s = np.linalg.svd(C, compute_uv=False)
        angle = subspace_angles(tb.basis, true).max()
        assert np.sin(angle) <= 2 * s[2] / s[1]

    def test_sign_rule(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(5, 9))
        P = tangent_basis(X, range(9), 3).basis
        for c in P.T:
            assert c[np.argmax(np.abs(c))] > 0

    def test_neighbourhood_too_small(self):
        with pytest.raises(InvalidArgumentError, match="too small"):
            tangent_basis(np.eye(3), [0, 1], 2)

    def test_d_exceeds_ambient(self):
        with pytest.raises(InvalidArgumentError):
            tangent_basis(np.random.default_rng(0).normal(size=(2, 6)), range(6), 3)

    def test_degenerate(self):
        X = np.vstack([np.arange(5.0), 2 * np.arange(5.0), np.zeros(5)])
        with pytest.raises(DegenerateNeighborhoodError) as info:
            tangent_basis(X, range(5), 2, anchor=4)
        assert info.value.rank == 1 and info.value.index == 4


class TestTangentDistance:
    @pytest.mark.parametrize("x0, P, x, dist, alpha", [
        ([0, 0], [[1], [0]], [2, 0], 0.0, [2.0]),
        ([0, 0], [[1], [0]], [3, 4], 4.0, [3.0]),
        ([0, 0, 0], [[1, 0], [0, 1], [0, 0]], [1, 2, 3], 3.0, [1.0, 2.0]),
    ])
    def test_examples(self, x0, P, x, dist, alpha):
        got, a = tangent_distance(np.array(x0, float), np.array(P, float), np.array(x, float))
        assert got == pytest.approx(dist, abs=1e-15)
        np.testing.assert_allclose(a, alpha, atol=1e-15)

    def test_random_5d_against_oracles(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            x0, P, x = random_instance(rng, 5, 2)
            got, a = tangent_distance(x0, P, x)
            ref, ra = lstsq_tangent_distance(x0, P, x)
            it, ia = iterative_tangent_distance(x0, P, x)
            assert abs(got - ref) < 1e-9 and abs(got - it) < 1e-9
            np.testing.assert_allclose(a, ra, atol=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            tangent_distance(np.zeros(3), np.eye(3)[:, :2], np.zeros(4))


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 10), st.data())
def test_bound_and_idempotence(m, data):
    d = data.draw(st.integers(1, m - 1))
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    x0, P, x = random_instance(rng, m, d)
    dist, _ = tangent_distance(x0, P, x)
    assert 0 <= dist <= np.linalg.norm(x - x0) + 1e-12
    beta = rng.normal(size=d)
    assert tangent_distance(x0, P, x0 + P @ beta)[0] < 1e-10
    # orthogonal offsets are not shortened at all
    normal = x - x0 - P @ (P.T @ (x - x0))
    assert tangent_distance(x0, P, x0 + normal)[0] == pytest.approx(np.linalg.norm(normal), abs=1e-9)


class TestDistanceMatrix:
    def test_plane_collapses(self):
        X = generate_plane(200, 0).data
        TD = tangent_distance_matrix(X, knn(X, 8), 2)
        assert TD.max() < 1e-9

    def test_euclidean_bound_swiss_roll(self):
        X = generate_swiss_roll(20, 0).data
        TD = tangent_distance_matrix(X, knn(X, 6), 2)
        assert np.all(np.diag(TD) == 0)
        assert np.all(TD >= 0)
        assert np.all(TD <= pairwise_distances(X) + 1e-9)

    def test_rows_match_pointwise(self):
        X = generate_s_curve(30, 1).data
        nb = knn(X, 7)
        TD = tangent_distance_matrix(X, nb, 2)
        bases = tangent_bases(X, nb, 2)
        for i in (0, 11, 29):
            for j in range(30):
                if i != j:
                    ref, _ = lstsq_tangent_distance(X[:, i], bases[i].basis, X[:, j])
                    assert TD[i, j] == pytest.approx(ref, abs=1e-9)

    def test_not_symmetric_in_general(self):
        X = generate_swiss_roll(40, 2).data
        TD = tangent_distance_matrix(X, knn(X, 8), 2)
        assert not np.allclose(TD, TD.T)

    def test_anchor_is_the_point_not_the_mean(self):
        X = generate_swiss_roll(40, 2).data
        nb = knn(X, 8)
        TD = tangent_distance_matrix(X, nb, 2)
        P = tangent_bases(X, nb, 2)[0].basis
        ref, _ = tangent_distance(X[:, 0], P, X[:, 5])
        assert TD[0, 5] == ref

    def test_rotation_invariance(self):
        X = generate_swiss_roll(60, 3).data
        Q = special_ortho_group.rvs(3, random_state=1)
        nb = knn(X, 10)
        a = tangent_distance_matrix(X, nb, 2)
        b = tangent_distance_matrix(Q @ X, knn(Q @ X, 10), 2)
        np.testing.assert_allclose(a, b, atol=1e-9)

    def test_orthonormal_bases(self):
        X = generate_swiss_roll(100, 0).data
        for tb in tangent_bases(X, knn(X, 12), 2):
            np.testing.assert_allclose(tb.basis.T @ tb.basis, np.eye(2), atol=1e-10)
            assert tb.singular_values[0] >= tb.singular_values[1] >= 0

    def test_degenerate_propagates_index(self):
        X = generate_swiss_roll(30, 0).data.copy()
        X[:, 20:] = X[:, 20:21]  # ten identical points
        nb = knn(X, 5)
        with pytest.raises(DegenerateNeighborhoodError) as info:
            tangent_distance_matrix(X, nb, 2)
        # the reported point's whole neighbourhood is the duplicated block
        assert set(nb.indices[info.value.index].tolist()) <= set(range(20, 30))

    def test_too_few_points(self):
        X = np.array([[0.0, 1.0], [0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(InvalidArgumentError):
            tangent_distance_matrix(X, knn(X, 1), 2)


class TestSymmetrize:
    TD = np.array([[0.0, 1.0], [3.0, 0.0]])

    @pytest.mark.parametrize("mode, expected", [("mean", 2.0), ("min", 1.0), ("max", 3.0)])
    def test_modes(self, mode, expected):
        np.testing.assert_array_equal(symmetrize(self.TD, mode), [[0, expected], [expected, 0]])

    @pytest.mark.parametrize("mode", ["mean", "min", "max"])
    def test_fixed_point(self, mode):
        S = pairwise_distances(np.random.default_rng(0).normal(size=(3, 6)))
        assert np.array_equal(symmetrize(S, mode), S)

    def test_negative(self):
        with pytest.raises(InvalidArgumentError):
            symmetrize([[0, -1], [1, 0]])

    def test_bad_mode(self):
        with pytest.raises(InvalidArgumentError):
            symmetrize(self.TD, "median")

    def test_mean_keeps_euclidean_bound(self):
        X = generate_swiss_roll(80, 1).data
        S = symmetrize(tangent_distance_matrix(X, knn(X, 10), 2))
        assert np.array_equal(S, S.T)
        assert np.all(S <= pairwise_distances(X) + 1e-9)
