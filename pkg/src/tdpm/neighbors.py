"""Exact brute-force nearest neighbours and pairwise Euclidean distances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import as_data_matrix
from .errors import InvalidArgumentError


@dataclass(frozen=True)
class NeighborIndex:
    """Row ``i`` lists the ``k`` nearest points to ``x_i`` (itself excluded)."""

    indices: np.ndarray    # (n, k) int
    distances: np.ndarray  # (n, k) float, non-decreasing along rows

    @property
    def k(self) -> int:
        return self.indices.shape[1]

    @property
    def n(self) -> int:
        return self.indices.shape[0]


def pairwise_distances(data) -> np.ndarray:
    """Full ``(n, n)`` Euclidean distance matrix between the columns of ``data``."""
    X = as_data_matrix(data)
    n = X.shape[1]
    D = np.zeros((n, n))
    for i in range(n - 1):
        diff = X[:, i + 1:] - X[:, i:i + 1]
        D[i, i + 1:] = np.sqrt(np.einsum("ij,ij->j", diff, diff))
    # mirror the upper triangle so D is symmetric bit-for-bit
    iu = np.triu_indices(n, 1)
    D[iu[1], iu[0]] = D[iu]
    return D


def knn_from_distances(D: np.ndarray, k: int) -> NeighborIndex:
    n = D.shape[0]
    k = int(k)
    if not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"k must lie in [1, {n - 1}], got {k}")
    indices = np.empty((n, k), dtype=np.intp)
    for i in range(n):
        row = D[i].copy()
        row[i] = np.inf
        # stable sort: equal distances keep ascending index order
        indices[i] = np.argsort(row, kind="stable")[:k]
    distances = np.take_along_axis(D, indices, axis=1)
    return NeighborIndex(indices, distances)


def knn(data, k: int) -> NeighborIndex:
    """Exact ``k`` nearest neighbours of every point, ties broken by index."""
    return knn_from_distances(pairwise_distances(data), k)
