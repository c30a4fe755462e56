"""Local tangent spaces by neighbourhood PCA, and one-sided tangent distance.

The tangent space at ``x_i`` is spanned by the top ``d`` left singular vectors
of the mean-centred neighbour matrix. The tangent distance from ``x`` to
``x_i`` is the length of the component of ``x - x_i`` orthogonal to that
span, i.e. the distance from ``x`` to the affine plane through ``x_i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import numerical_rank, orient_columns
from .dataset import as_data_matrix
from .errors import DegenerateNeighborhoodError, InvalidArgumentError
from .neighbors import NeighborIndex

SYMMETRIZE_MODES = ("mean", "min", "max")


@dataclass(frozen=True)
class TangentBasis:
    anchor: int
    basis: np.ndarray            # (m, d), orthonormal columns
    singular_values: np.ndarray  # (d,), non-increasing

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def tangent_basis(data, neighbors_of_i, d: int, anchor: int = -1) -> TangentBasis:
    """Orthonormal basis of the ``d``-dimensional tangent space from one neighbourhood.

    Parameters
    ----------
    data : (m, n) array
        Column-per-point data matrix.
    neighbors_of_i : sequence of int
        Column indices of the neighbourhood (the anchor itself is not included).
    d : int
        Tangent dimension.
    anchor : int
        Index recorded on the result; it does not enter the computation.

    Raises
    ------
    InvalidArgumentError
        If ``len(neighbors_of_i) <= d`` or ``d`` exceeds the ambient dimension.
    DegenerateNeighborhoodError
        If the centred neighbourhood has rank below ``d``.
    """
    X = np.asarray(data, dtype=np.float64)
    idx = np.asarray(neighbors_of_i, dtype=np.intp)
    m = X.shape[0]
    k = idx.size
    d = int(d)
    if d < 1:
        raise InvalidArgumentError(f"tangent dimension must be >= 1, got {d}")
    if k <= d:
        raise InvalidArgumentError(
            f"neighborhood too small for tangent rank: k={k} must exceed d={d}"
        )
    if d > m:
        raise InvalidArgumentError(f"tangent dimension {d} exceeds ambient dimension {m}")

    Xi = X[:, idx]
    centered = Xi - Xi.mean(axis=1, keepdims=True)
    U, s, _ = np.linalg.svd(centered, full_matrices=False)
    rank = numerical_rank(s, centered.shape)
    if rank < d:
        raise DegenerateNeighborhoodError(
            f"centered neighborhood of point {anchor} has rank {rank} < {d}",
            index=anchor, rank=rank,
        )
    return TangentBasis(int(anchor), orient_columns(U[:, :d]), s[:d].copy())


def tangent_distance(anchor_point, basis, query) -> tuple[float, np.ndarray]:
    """Distance from ``query`` to the affine tangent plane through ``anchor_point``.

    Returns the distance and the tangent coordinates ``alpha`` of the closest
    point ``anchor_point + P @ alpha``.
    """
    P = basis.basis if isinstance(basis, TangentBasis) else np.asarray(basis, dtype=np.float64)
    x0 = np.asarray(anchor_point, dtype=np.float64).ravel()
    x = np.asarray(query, dtype=np.float64).ravel()
    if P.ndim != 2 or not (x0.shape[0] == x.shape[0] == P.shape[0]):
        raise InvalidArgumentError(
            f"dimension mismatch: anchor {x0.shape}, query {x.shape}, basis {P.shape}"
        )
    r = x - x0
    alpha = P.T @ r
    residual = r - P @ alpha
    return float(np.sqrt(residual @ residual)), alpha


def tangent_bases(data, neighbors: NeighborIndex, d: int) -> list[TangentBasis]:
    X = as_data_matrix(data)
    if neighbors.n != X.shape[1]:
        raise InvalidArgumentError(
            f"neighbor index covers {neighbors.n} points, data has {X.shape[1]}"
        )
    return [tangent_basis(X, neighbors.indices[i], d, anchor=i) for i in range(X.shape[1])]


def tangent_distance_matrix(data, neighbors: NeighborIndex, d: int) -> np.ndarray:
    """``TD[i, j]`` = distance from ``x_j`` to the tangent plane anchored at ``x_i``.

    The result is generally not symmetric; see :func:`symmetrize`.
    """
    X = as_data_matrix(data)
    bases = tangent_bases(X, neighbors, d)
    n = X.shape[1]
    TD = np.empty((n, n))
    for i, tb in enumerate(bases):
        P = tb.basis
        R = X - X[:, i:i + 1]
        R -= P @ (P.T @ R)
        TD[i] = np.sqrt(np.einsum("ij,ij->j", R, R))
    np.fill_diagonal(TD, 0.0)
    return TD


def symmetrize(td, mode: str = "mean") -> np.ndarray:
    """Combine ``TD[i, j]`` and ``TD[j, i]`` into a symmetric distance matrix."""
    T = np.asarray(td, dtype=np.float64)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {T.shape}")
    if np.any(T < 0):
        raise InvalidArgumentError("tangent distance matrix has negative entries")
    if mode == "mean":
        S = 0.5 * (T + T.T)
    elif mode == "min":
        S = np.minimum(T, T.T)
    elif mode == "max":
        S = np.maximum(T, T.T)
    else:
        raise InvalidArgumentError(f"unknown symmetrize mode {mode!r}; choose from {SYMMETRIZE_MODES}")
    np.fill_diagonal(S, 0.0)
    return S
