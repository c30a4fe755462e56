"""Reference ISOMAP: kNN graph, shortest-path geodesics, classical MDS."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

from .dataset import as_data_matrix
from .errors import DisconnectedGraphError
from .mds import Embedding, classical_mds
from .neighbors import knn_from_distances, pairwise_distances

# stand-in for zero-length edges between duplicate points; csgraph treats 0 as "no edge"
_TINY_EDGE = np.finfo(np.float64).tiny


@dataclass(frozen=True)
class NeighborGraph:
    """Undirected kNN graph; an edge exists if either endpoint selected the other."""

    n: int
    adjacency: tuple[tuple[tuple[int, float], ...], ...]

    def edges(self):
        """Yield each undirected edge once as ``(i, j, weight)`` with ``i < j``."""
        for i, nbrs in enumerate(self.adjacency):
            for j, w in nbrs:
                if i < j:
                    yield i, j, w

    def to_sparse(self) -> csr_matrix:
        rows, cols, vals = [], [], []
        for i, nbrs in enumerate(self.adjacency):
            for j, w in nbrs:
                rows.append(i)
                cols.append(j)
                vals.append(w if w > 0 else _TINY_EDGE)
        return csr_matrix((vals, (rows, cols)), shape=(self.n, self.n))


def build_graph(data, k: int) -> NeighborGraph:
    X = as_data_matrix(data)
    D = pairwise_distances(X)
    nbr = knn_from_distances(D, k)
    n = X.shape[1]
    linked = [set() for _ in range(n)]
    for i in range(n):
        for j in nbr.indices[i]:
            linked[i].add(int(j))
            linked[int(j)].add(i)
    adjacency = tuple(
        tuple((j, float(D[i, j])) for j in sorted(linked[i])) for i in range(n)
    )
    return NeighborGraph(n, adjacency)


def components(graph: NeighborGraph) -> np.ndarray:
    """Component label per vertex."""
    _, labels = connected_components(graph.to_sparse(), directed=False)
    return labels


def _component_sizes(labels: np.ndarray) -> list[int]:
    return sorted(np.bincount(labels).tolist(), reverse=True)


def geodesic_distances(graph: NeighborGraph) -> np.ndarray:
    """All-pairs shortest-path lengths over a connected graph."""
    labels = components(graph)
    if labels.max(initial=0) > 0:
        sizes = _component_sizes(labels)
        raise DisconnectedGraphError(
            f"neighbor graph has {len(sizes)} components of sizes {sizes}",
            component_sizes=sizes,
        )
    G = dijkstra(graph.to_sparse(), directed=False)
    G = np.where(G <= len(G) * _TINY_EDGE, 0.0, G)
    G = np.minimum(G, G.T)
    np.fill_diagonal(G, 0.0)
    return G


def largest_component(graph: NeighborGraph) -> np.ndarray:
    """Sorted vertex indices of the largest component (ties: lowest label)."""
    labels = components(graph)
    biggest = int(np.argmax(np.bincount(labels)))
    return np.flatnonzero(labels == biggest)


def subgraph(graph: NeighborGraph, keep) -> NeighborGraph:
    """Induced subgraph on ``keep`` (sorted), vertices relabelled 0..len(keep)-1."""
    keep = [int(v) for v in keep]
    relabel = {v: i for i, v in enumerate(keep)}
    adjacency = tuple(
        tuple((relabel[j], w) for j, w in graph.adjacency[v] if j in relabel) for v in keep
    )
    return NeighborGraph(len(keep), adjacency)


def isomap_geodesics(data, k: int, d: int, *, largest_component_only: bool = False
                      ) -> tuple[Embedding, np.ndarray]:
    """ISOMAP embedding together with the geodesic matrix it was computed from."""
    X = as_data_matrix(data)
    graph = build_graph(X, k)
    keep = None
    if largest_component_only:
        keep = largest_component(graph)
        if keep.size < X.shape[1]:
            graph = subgraph(graph, keep)
        else:
            keep = None
    G = geodesic_distances(graph)
    emb = classical_mds(G, d)
    if keep is not None:
        emb = Embedding(emb.coordinates, emb.eigenvalues, emb.negative_mass, keep)
    return emb, G


def isomap_embed(data, k: int, d: int, *, largest_component_only: bool = False) -> Embedding:
    """ISOMAP embedding into ``d`` dimensions.

    With ``largest_component_only`` a disconnected graph is cut down to its
    largest component; the kept point indices are returned on
    ``Embedding.indices``.
    """
    return isomap_geodesics(data, k, d, largest_component_only=largest_component_only)[0]
