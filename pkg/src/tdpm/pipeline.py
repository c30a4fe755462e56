"""TDPM end to end, the TDPM-then-ISOMAP composition, and embedding metrics."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .dataset import ManifoldSample, analytic_tangents, as_data_matrix
from .errors import InvalidArgumentError, TdpmError
from .isomap import isomap_geodesics
from .mds import Embedding, classical_mds, embedded_distances
from .neighbors import knn, pairwise_distances
from .tangent import SYMMETRIZE_MODES, tangent_bases, tangent_distance_matrix, symmetrize

DEFAULT_K = 12
DEFAULT_H = 6


@dataclass(frozen=True)
class TdpmConfig:
    k: int = DEFAULT_K
    d: int = 2
    tangent_dim: int | None = None   # None -> same as d
    symmetrize_mode: str = "mean"

    def __post_init__(self):
        if self.d < 1:
            raise InvalidArgumentError(f"embedding dimension must be >= 1, got {self.d}")
        if self.tangent_rank < 1:
            raise InvalidArgumentError(f"tangent dimension must be >= 1, got {self.tangent_rank}")
        if self.k <= self.tangent_rank:
            raise InvalidArgumentError(
                f"neighborhood too small for tangent rank: k={self.k} must exceed "
                f"tangent_dim={self.tangent_rank}",
                stage="tangent",
            )
        if self.symmetrize_mode not in SYMMETRIZE_MODES:
            raise InvalidArgumentError(
                f"unknown symmetrize mode {self.symmetrize_mode!r}; choose from {SYMMETRIZE_MODES}"
            )

    @property
    def tangent_rank(self) -> int:
        return self.d if self.tangent_dim is None else self.tangent_dim


@dataclass(frozen=True)
class EmbeddingReport:
    """An embedding and how well its distances track the distances it was fit to."""

    method: str
    embedding: Embedding
    target: np.ndarray = field(repr=False)
    normalized_stress: float
    distance_correlation: float
    config: dict[str, Any] = field(default_factory=dict)
    stage_one: "EmbeddingReport | None" = field(default=None, repr=False)

    @property
    def negative_mass(self) -> float:
        return self.embedding.negative_mass

    def to_dict(self) -> dict[str, Any]:
        out = {
            "method": self.method,
            "config": self.config,
            "eigenvalues": [float(v) for v in self.embedding.eigenvalues],
            "negative_mass": float(self.negative_mass),
            "normalized_stress": float(self.normalized_stress),
            "distance_correlation": float(self.distance_correlation),
        }
        if self.embedding.indices is not None:
            out["kept_indices"] = [int(i) for i in self.embedding.indices]
        if self.stage_one is not None:
            out["stage_one"] = self.stage_one.to_dict()
        return out


def _upper(M: np.ndarray) -> np.ndarray:
    return M[np.triu_indices(M.shape[0], 1)]


def _check_target(target, embedding: Embedding) -> np.ndarray:
    T = np.asarray(target, dtype=np.float64)
    if T.shape != (embedding.n, embedding.n):
        raise InvalidArgumentError(
            f"target is {T.shape}, embedding has {embedding.n} points"
        )
    return T


def normalized_stress(target, embedding: Embedding) -> float:
    """``sqrt(sum (t_ij - y_ij)^2 / sum t_ij^2)`` over pairs ``i < j``."""
    T = _check_target(target, embedding)
    t = _upper(T)
    y = _upper(embedded_distances(embedding))
    num = float(np.sum((t - y) ** 2))
    den = float(np.sum(t ** 2))
    if den == 0.0:
        # all-zero target: perfect iff the embedding is collapsed too
        return 0.0 if num == 0.0 else math.inf
    return math.sqrt(num / den)


def distance_correlation(target, embedding: Embedding) -> float:
    """Pearson correlation between target and embedded pairwise distances.

    Returns 0.0 when either side has zero variance.
    """
    T = _check_target(target, embedding)
    t = _upper(T)
    y = _upper(embedded_distances(embedding))
    t = t - t.mean()
    y = y - y.mean()
    den = math.sqrt(float(t @ t) * float(y @ y))
    if den == 0.0:
        return 0.0
    return float(np.clip((t @ y) / den, -1.0, 1.0))


def procrustes_error(a, b) -> float:
    """RMS point discrepancy between ``a`` and the best ``s Q b + t``.

    Both are ``(dim, n)`` coordinate matrices. Minimises over scale ``s > 0``,
    orthogonal ``Q`` (reflections allowed) and translation ``t``; the result is
    in the units of ``a``.
    """
    A = np.asarray(a, dtype=np.float64)
    B = np.asarray(b, dtype=np.float64)
    if A.shape != B.shape or A.ndim != 2:
        raise InvalidArgumentError(f"shape mismatch: {A.shape} vs {B.shape}")
    n = A.shape[1]
    A = A - A.mean(axis=1, keepdims=True)
    B = B - B.mean(axis=1, keepdims=True)
    a2 = float(np.sum(A * A))
    b2 = float(np.sum(B * B))
    if b2 == 0.0:
        return math.sqrt(a2 / n)
    U, sv, Vt = np.linalg.svd(A @ B.T)
    Q = U @ Vt
    scale = float(sv.sum()) / b2
    # explicit residual; the closed form a2 - tr(S)^2 / b2 cancels catastrophically
    R = A - scale * (Q @ B)
    return math.sqrt(float(np.sum(R * R)) / n)


def _report(method, emb, target, config, stage_one=None) -> EmbeddingReport:
    return EmbeddingReport(
        method=method,
        embedding=emb,
        target=target,
        normalized_stress=normalized_stress(target, emb),
        distance_correlation=distance_correlation(target, emb),
        config=config,
        stage_one=stage_one,
    )


def _staged(stage: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except TdpmError as exc:
        if exc.stage is None:
            exc.stage = stage
        raise


def tdpm_distances(data, config: TdpmConfig) -> np.ndarray:
    """Symmetrised tangent-distance matrix: neighbours, local PCA, projection."""
    X = as_data_matrix(data)
    nbrs = _staged("neighbors", knn, X, config.k)
    td = _staged("tangent", tangent_distance_matrix, X, nbrs, config.tangent_rank)
    return symmetrize(td, config.symmetrize_mode)


def tdpm_embed(data, config: TdpmConfig) -> EmbeddingReport:
    """Tangent Distance Preserving Mapping of ``data`` into ``config.d`` dimensions."""
    S = tdpm_distances(data, config)
    emb = _staged("mds", classical_mds, S, config.d)
    return _report("tdpm", emb, S, asdict(config))


def isomap_report(data, k: int, d: int, *, largest_component_only: bool = False) -> EmbeddingReport:
    emb, G = _staged("isomap", isomap_geodesics, data, k, d,
                     largest_component_only=largest_component_only)
    cfg = {"k": k, "d": d, "largest_component": largest_component_only}
    return _report("isomap", emb, G, cfg)


def mds_report(data, d: int) -> EmbeddingReport:
    D = pairwise_distances(data)
    emb = _staged("mds", classical_mds, D, d)
    return _report("mds", emb, D, {"d": d})


def tdpm_then_isomap(data, config: TdpmConfig, isomap_k: int, final_d: int = 2, *,
                     largest_component_only: bool = False) -> EmbeddingReport:
    """TDPM into ``config.d`` (the intermediate dimension), then ISOMAP to ``final_d``.

    The returned metrics compare the stage-two geodesics with the final
    embedding; the stage-one report rides along on ``stage_one``.
    """
    first = tdpm_embed(data, config)
    try:
        second = isomap_report(first.embedding.coordinates, isomap_k, final_d,
                               largest_component_only=largest_component_only)
    except TdpmError as exc:
        exc.stage = "isomap after tdpm" if exc.stage in (None, "isomap") else exc.stage
        raise
    cfg = {"tdpm": asdict(config), "isomap_k": isomap_k, "final_d": final_d,
           "largest_component": largest_component_only}
    return EmbeddingReport("tdpm+isomap", second.embedding, second.target,
                           second.normalized_stress, second.distance_correlation,
                           cfg, first)


def tangent_angle_errors(sample: ManifoldSample, k: int, d: int = 2) -> np.ndarray:
    """Largest principal angle (radians) between estimated and true tangent planes."""
    frames = analytic_tangents(sample)
    bases = tangent_bases(sample.data, knn(sample.data, k), d)
    out = np.empty(sample.n)
    for i, tb in enumerate(bases):
        Q, _ = np.linalg.qr(frames[i])
        cosines = np.linalg.svd(tb.basis.T @ Q, compute_uv=False)
        out[i] = math.acos(min(1.0, float(cosines.min())))
    return out


@dataclass
class SweepResult:
    d: int
    cells: dict[tuple[int, int], EmbeddingReport | str]
    # (k_lo, k_hi, n) -> Procrustes error between embeddings at adjacent k
    adjacent_procrustes: dict[tuple[int, int, int], float]

    @property
    def errors(self) -> dict[tuple[int, int], str]:
        return {key: v for key, v in self.cells.items() if isinstance(v, str)}

    def summary(self) -> dict[str, Any]:
        cells = []
        for (k, n), cell in sorted(self.cells.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            row = {"k": k, "n": n}
            if isinstance(cell, str):
                row["error"] = cell
            else:
                row.update(normalized_stress=cell.normalized_stress,
                           distance_correlation=cell.distance_correlation,
                           negative_mass=cell.negative_mass)
            cells.append(row)
        adj = [{"k_lo": a, "k_hi": b, "n": n, "procrustes_error": v}
               for (a, b, n), v in sorted(self.adjacent_procrustes.items(),
                                          key=lambda kv: (kv[0][2], kv[0][0]))]
        return {"d": self.d, "cells": cells, "adjacent_procrustes": adj}


def sensitivity_sweep(sample: ManifoldSample, k_values, n_values, d: int = 2, *,
                      workers: int = 1) -> SweepResult:
    """Run TDPM over a ``k`` by ``n`` grid on nested prefixes of one sample.

    Failing cells hold the error message instead of a report. Procrustes errors
    are computed between neighbouring ``k`` values (in sorted order) at each ``n``.
    """
    k_values = sorted(set(int(k) for k in k_values))
    n_values = sorted(set(int(n) for n in n_values))
    grid = [(k, n) for n in n_values for k in k_values]

    def run(cell):
        k, n = cell
        try:
            return tdpm_embed(sample.head(n).data, TdpmConfig(k=k, d=d))
        except TdpmError as exc:
            return f"{type(exc).__name__}: {exc}"

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, grid))
    else:
        results = [run(c) for c in grid]
    cells = dict(zip(grid, results))

    adjacent = {}
    for n in n_values:
        for lo, hi in zip(k_values, k_values[1:]):
            a, b = cells[(lo, n)], cells[(hi, n)]
            if isinstance(a, EmbeddingReport) and isinstance(b, EmbeddingReport):
                adjacent[(lo, hi, n)] = procrustes_error(a.embedding.coordinates,
                                                         b.embedding.coordinates)
    return SweepResult(d, cells, adjacent)
