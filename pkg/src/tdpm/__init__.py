"""Tangent Distance Preserving Mapping (TDPM) with a reference ISOMAP."""

from .dataset import (ManifoldSample, generate, generate_plane, generate_s_curve,
                      generate_swiss_roll, load_csv, write_embedding_csv)
from .errors import (DataIOError, DegenerateNeighborhoodError, DisconnectedGraphError,
                     InvalidArgumentError, NumericError, ParseError, TdpmError)
from .isomap import build_graph, geodesic_distances, isomap_embed
from .mds import Embedding, classical_mds, double_center
from .neighbors import NeighborIndex, knn, pairwise_distances
from .pipeline import (EmbeddingReport, TdpmConfig, distance_correlation, normalized_stress,
                       procrustes_error, sensitivity_sweep, tdpm_embed, tdpm_then_isomap)
from .tangent import (TangentBasis, symmetrize, tangent_basis, tangent_distance,
                      tangent_distance_matrix)

__version__ = "0.1.0"
