"""Synthetic manifold samples and CSV input/output.

Data matrices follow the column-per-point convention: an ``(m, n)`` array
holds ``n`` points in ``m`` ambient dimensions.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from .errors import DataIOError, InvalidArgumentError, ParseError

if TYPE_CHECKING:
    from .mds import Embedding

SWISS_ROLL_T = (1.5 * math.pi, 4.5 * math.pi)
SWISS_ROLL_HEIGHT = (0.0, 21.0)
S_CURVE_T = (-1.5 * math.pi, 1.5 * math.pi)
S_CURVE_HEIGHT = (0.0, 2.0)

_MAX_SEED = 2**64


@dataclass(frozen=True)
class ManifoldSample:
    """Ambient points plus the intrinsic parameters that generated them."""

    data: np.ndarray
    params: np.ndarray
    kind: str
    seed: int

    def __post_init__(self):
        if self.data.shape[1] != self.params.shape[1]:
            raise InvalidArgumentError(
                f"data has {self.data.shape[1]} points but params has {self.params.shape[1]}"
            )

    @property
    def n(self) -> int:
        return self.data.shape[1]

    def head(self, n: int) -> "ManifoldSample":
        """First ``n`` points; nested prefixes isolate the effect of sample size."""
        if not 2 <= n <= self.n:
            raise InvalidArgumentError(f"prefix size {n} outside [2, {self.n}]")
        return ManifoldSample(self.data[:, :n].copy(), self.params[:, :n].copy(),
                              self.kind, self.seed)


def as_data_matrix(data) -> np.ndarray:
    """Validate and return ``data`` as a float64 ``(m, n)`` array."""
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidArgumentError(f"data matrix must be 2-d, got shape {arr.shape}")
    m, n = arr.shape
    if m < 1 or n < 2:
        raise InvalidArgumentError(f"need m >= 1 and n >= 2, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("data matrix contains NaN or Inf")
    return arr


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < _MAX_SEED:
        raise InvalidArgumentError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def _check_n(n: int) -> int:
    n = int(n)
    if n < 2:
        raise InvalidArgumentError(f"need at least 2 points, got n={n}")
    return n


def swiss_roll_points(params: np.ndarray) -> np.ndarray:
    t, h = params
    return np.vstack([t * np.cos(t), h, t * np.sin(t)])


def s_curve_points(params: np.ndarray) -> np.ndarray:
    t, h = params
    return np.vstack([np.sin(t), h, np.sign(t) * (np.cos(t) - 1.0)])


def _plane_rotation() -> np.ndarray:
    # Fixed tilt so the plane is in general position (no zero direction cosines).
    a, b, c = 0.7, -0.4, 1.1
    rz = np.array([[math.cos(a), -math.sin(a), 0.0],
                   [math.sin(a), math.cos(a), 0.0],
                   [0.0, 0.0, 1.0]])
    ry = np.array([[math.cos(b), 0.0, math.sin(b)],
                   [0.0, 1.0, 0.0],
                   [-math.sin(b), 0.0, math.cos(b)]])
    rx = np.array([[1.0, 0.0, 0.0],
                   [0.0, math.cos(c), -math.sin(c)],
                   [0.0, math.sin(c), math.cos(c)]])
    return rz @ ry @ rx


PLANE_ROTATION = _plane_rotation()


def plane_points(params: np.ndarray) -> np.ndarray:
    u, v = params
    return PLANE_ROTATION @ np.vstack([u, v, np.zeros_like(u)])


def _uniform_params(n, seed, *ranges):
    rng = np.random.default_rng(seed)
    return np.vstack([rng.uniform(lo, hi, size=n) for lo, hi in ranges])


def generate_swiss_roll(n: int, seed: int) -> ManifoldSample:
    """Swiss roll ``(t cos t, h, t sin t)`` with ``t`` in [3pi/2, 9pi/2], ``h`` in [0, 21]."""
    n, seed = _check_n(n), _check_seed(seed)
    params = _uniform_params(n, seed, SWISS_ROLL_T, SWISS_ROLL_HEIGHT)
    return ManifoldSample(swiss_roll_points(params), params, "swissroll", seed)


def generate_s_curve(n: int, seed: int) -> ManifoldSample:
    """S-curve ``(sin t, h, sign(t)(cos t - 1))`` with ``t`` in [-3pi/2, 3pi/2], ``h`` in [0, 2]."""
    n, seed = _check_n(n), _check_seed(seed)
    params = _uniform_params(n, seed, S_CURVE_T, S_CURVE_HEIGHT)
    return ManifoldSample(s_curve_points(params), params, "scurve", seed)


def generate_plane(n: int, seed: int) -> ManifoldSample:
    """Unit square, rotated by a fixed orthogonal matrix into general position."""
    n, seed = _check_n(n), _check_seed(seed)
    params = _uniform_params(n, seed, (0.0, 1.0), (0.0, 1.0))
    return ManifoldSample(plane_points(params), params, "plane", seed)


GENERATORS = {
    "swissroll": generate_swiss_roll,
    "scurve": generate_s_curve,
    "plane": generate_plane,
}


def generate(kind: str, n: int, seed: int) -> ManifoldSample:
    try:
        gen = GENERATORS[kind]
    except KeyError:
        raise InvalidArgumentError(
            f"unknown manifold {kind!r}; choose from {sorted(GENERATORS)}"
        ) from None
    return gen(n, seed)


def analytic_tangents(sample: ManifoldSample) -> np.ndarray:
    """Exact tangent frames of the generating map, shape ``(n, 3, 2)``.

    Columns are the partial derivatives with respect to each intrinsic
    parameter; they span the true tangent plane but are not orthonormal.
    """
    n = sample.n
    frames = np.zeros((n, 3, 2))
    if sample.kind == "plane":
        frames[:] = PLANE_ROTATION[:, :2]
        return frames
    t = sample.params[0]
    if sample.kind == "swissroll":
        frames[:, 0, 0] = np.cos(t) - t * np.sin(t)
        frames[:, 2, 0] = np.sin(t) + t * np.cos(t)
    elif sample.kind == "scurve":
        frames[:, 0, 0] = np.cos(t)
        frames[:, 2, 0] = -np.sign(t) * np.sin(t)
    else:
        raise InvalidArgumentError(f"no analytic tangents for {sample.kind!r}")
    frames[:, 1, 1] = 1.0
    return frames


def _is_number(field: str) -> bool:
    try:
        float(field)
    except ValueError:
        return False
    return True


def load_csv(path) -> np.ndarray:
    """Read one point per CSV row and return the ``(features, points)`` matrix.

    A first row containing any non-numeric field is taken as a header.
    """
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh)]
    except OSError as exc:
        raise DataIOError(f"cannot read {path}: {exc.strerror or exc}") from exc

    # row numbers reported to the user are 1-based file lines
    numbered = [(i + 1, r) for i, r in enumerate(rows) if any(f.strip() for f in r)]
    if numbered and not all(_is_number(f) for f in numbered[0][1]):
        numbered = numbered[1:]
    if len(numbered) < 2:
        raise InvalidArgumentError(f"{path}: need at least 2 data rows, found {len(numbered)}")

    width = len(numbered[0][1])
    values = np.empty((len(numbered), width))
    for r, (lineno, fields) in enumerate(numbered):
        if len(fields) != width:
            raise ParseError(f"expected {width} fields, found {len(fields)}", row=lineno)
        for c, field in enumerate(fields):
            try:
                x = float(field)
            except ValueError:
                raise ParseError(f"non-numeric field {field!r}", row=lineno,
                                 column=c + 1) from None
            if not math.isfinite(x):
                raise ParseError(f"non-finite value {field!r}", row=lineno, column=c + 1)
            values[r, c] = x
    return values.T.copy()


def _fmt(x: float) -> str:
    # repr gives the shortest string that round-trips exactly (<= 17 digits)
    return repr(float(x))


def write_points_csv(path, data: np.ndarray, prefix: str = "x") -> None:
    """Write a ``(m, n)`` matrix as ``n`` rows with a ``x1..xm`` header."""
    data = np.asarray(data, dtype=np.float64)
    header = [f"{prefix}{i + 1}" for i in range(data.shape[0])]
    _write_rows(path, header, ([_fmt(v) for v in col] for col in data.T))


def write_embedding_csv(path, embedding: "Embedding", params: np.ndarray | None = None) -> None:
    """Write ``index, y1..yd[, p1..pq]`` rows, one per embedded point."""
    coords = embedding.coordinates
    n = coords.shape[1]
    header = ["index"] + [f"y{i + 1}" for i in range(coords.shape[0])]
    if params is not None:
        params = np.atleast_2d(np.asarray(params, dtype=np.float64))
        if params.shape[1] != n:
            raise InvalidArgumentError(
                f"params has {params.shape[1]} columns, embedding has {n} points"
            )
        header += [f"p{i + 1}" for i in range(params.shape[0])]
    labels = embedding.indices if embedding.indices is not None else range(n)

    def rows():
        for j, label in enumerate(labels):
            row = [str(int(label))] + [_fmt(v) for v in coords[:, j]]
            if params is not None:
                row += [_fmt(v) for v in params[:, j]]
            yield row

    _write_rows(path, header, rows())


def _write_rows(path, header, rows) -> None:
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise DataIOError(f"cannot write {path}: {exc.strerror or exc}") from exc
