"""Classical (Torgerson) multidimensional scaling."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._linalg import orient_columns
from .errors import InvalidArgumentError, NumericError
from .neighbors import pairwise_distances


@dataclass(frozen=True)
class Embedding:
    """Embedded coordinates plus the spectrum they were cut from.

    ``indices`` is set only when the embedding covers a subset of the input
    points (e.g. ISOMAP restricted to the largest graph component).
    """

    coordinates: np.ndarray   # (d, n)
    eigenvalues: np.ndarray   # (n,), non-increasing
    negative_mass: float
    indices: np.ndarray | None = field(default=None)

    @property
    def dim(self) -> int:
        return self.coordinates.shape[0]

    @property
    def n(self) -> int:
        return self.coordinates.shape[1]


def check_distance_matrix(dist, *, rtol: float = 1e-12) -> np.ndarray:
    D = np.asarray(dist, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise InvalidArgumentError(f"distance matrix must be square, got shape {D.shape}")
    if not np.all(np.isfinite(D)):
        raise InvalidArgumentError("distance matrix contains NaN or Inf")
    if np.any(D < 0):
        raise InvalidArgumentError("distance matrix has negative entries")
    if np.any(np.diag(D) != 0):
        raise InvalidArgumentError("distance matrix diagonal must be zero")
    scale = D.max(initial=0.0)
    if np.max(np.abs(D - D.T), initial=0.0) > rtol * max(scale, 1.0):
        raise InvalidArgumentError("distance matrix is not symmetric")
    return D


def double_center(dist) -> np.ndarray:
    """Gram matrix ``B = -1/2 H D**2 H`` with ``H`` the centring projector."""
    D = check_distance_matrix(dist)
    D2 = D * D
    row = D2.mean(axis=1, keepdims=True)
    col = D2.mean(axis=0, keepdims=True)
    B = -0.5 * (D2 - row - col + D2.mean())
    return 0.5 * (B + B.T)


def classical_mds(dist, d: int) -> Embedding:
    """Embed a distance matrix into ``d`` dimensions.

    Coordinates along eigenvalue ``lambda_r`` are ``sqrt(max(lambda_r, 0))``
    times the unit eigenvector, so non-Euclidean input yields zero rows rather
    than an error. The share of spectral mass on negative eigenvalues is
    reported as ``negative_mass``.
    """
    D = check_distance_matrix(dist)
    n = D.shape[0]
    d = int(d)
    if not 1 <= d <= n - 1:
        raise InvalidArgumentError(f"embedding dimension must lie in [1, {n - 1}], got {d}")
    B = double_center(D)
    try:
        evals, evecs = np.linalg.eigh(B)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    order = np.argsort(evals, kind="stable")[::-1]
    evals = evals[order]
    evecs = orient_columns(evecs[:, order[:d]])

    coords = np.sqrt(np.maximum(evals[:d], 0.0))[:, None] * evecs.T
    total = np.abs(evals).sum()
    neg = np.abs(evals[evals < 0]).sum()
    negative_mass = float(neg / total) if total > 0 else 0.0
    return Embedding(coords, evals, negative_mass)


def embedded_distances(embedding: Embedding) -> np.ndarray:
    Y = embedding.coordinates
    if Y.shape[1] < 2:
        return np.zeros((Y.shape[1], Y.shape[1]))
    return pairwise_distances(Y)
