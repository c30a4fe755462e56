from __future__ import annotations

import numpy as np


def orient_columns(V: np.ndarray) -> np.ndarray:
    """Flip column signs so each column's largest-magnitude entry is positive.

    Ties go to the lowest row index (``argmax`` returns the first maximum).
    """
    V = np.array(V, dtype=np.float64, copy=True)
    if V.size == 0:
        return V
    pivots = np.argmax(np.abs(V), axis=0)
    signs = np.sign(V[pivots, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return V * signs


def numerical_rank(s: np.ndarray, shape: tuple[int, int]) -> int:
    """Rank from singular values with the usual ``max(shape) * eps * s_max`` cutoff."""
    if s.size == 0 or s[0] == 0:
        return 0
    tol = max(shape) * np.finfo(np.float64).eps * s[0]
    return int(np.count_nonzero(s > tol))
