"""Vietoris-Rips filtration of a finite point cloud."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple, Union

import numba
import numpy as np
from scipy.spatial.distance import pdist, squareform

from .embedding import PointCloud
from .errors import ConfigError, DimensionTooLarge

FULL = "full"


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    entries: np.ndarray

    def __post_init__(self):
        d = np.array(self.entries, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] < 1:
            raise ValueError(f"distance matrix must be square and non-empty, got {d.shape}")
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise ValueError("distances must be finite and non-negative")
        if np.any(np.diag(d) != 0) or not np.array_equal(d, d.T):
            raise ValueError("distance matrix must be symmetric with zero diagonal")
        d.setflags(write=False)
        object.__setattr__(self, "entries", d)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class Simplex:
    vertices: Tuple[int, ...]
    value: float

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True, eq=False)
class Filtration:
    """Simplices in filtration order, stored column-wise.

    ``vertices`` is (N, max_dim + 1) with rows padded by -1 past the simplex
    dimension.
    """

    vertices: np.ndarray
    dims: np.ndarray
    values: np.ndarray
    n_points: int

    def __len__(self):
        return len(self.values)

    @property
    def max_dim(self) -> int:
        return self.vertices.shape[1] - 1

    def __getitem__(self, i) -> Simplex:
        k = int(self.dims[i])
        return Simplex(tuple(int(v) for v in self.vertices[i, : k + 1]), float(self.values[i]))

    def __iter__(self) -> Iterator[Simplex]:
        for i in range(len(self)):
            yield self[i]

    def counts(self):
        return np.bincount(self.dims, minlength=self.max_dim + 1)

    def edges(self, epsilon: Optional[float] = None):
        """(i, j, value) arrays for the 1-simplices with value <= epsilon."""
        mask = self.dims == 1
        if epsilon is not None:
            mask &= self.values <= epsilon
        v = self.vertices[mask]
        return v[:, 0], v[:, 1], self.values[mask]


def pairwise_distances(cloud: PointCloud) -> DistanceMatrix:
    pts = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud, float)
    if len(pts) == 1:
        return DistanceMatrix(np.zeros((1, 1)))
    return DistanceMatrix(squareform(pdist(pts, "euclidean")))


@numba.njit(cache=True)
def _walk_cliques(dist, size, eps, fill, out_v, out_val):
    # Depth-first walk over vertex sets of the given size in lexicographic
    # order, pruning as soon as the running diameter exceeds eps.
    n = dist.shape[0]
    idx = np.zeros(size, np.int64)
    diam = np.zeros(size + 1, np.float64)
    count = 0
    level = 0
    idx[0] = -1
    while level >= 0:
        idx[level] += 1
        if idx[level] > n - (size - level):
            level -= 1
            continue
        v = idx[level]
        d = diam[level]
        for q in range(level):
            dq = dist[idx[q], v]
            if dq > d:
                d = dq
        if d > eps:
            continue
        if level == size - 1:
            if fill:
                for q in range(size):
                    out_v[count, q] = idx[q]
                out_val[count] = d
            count += 1
        else:
            diam[level + 1] = d
            level += 1
            idx[level] = v
    return count


def _cliques(dist, size, eps):
    dummy_v = np.empty((0, size), np.int32)
    dummy_val = np.empty(0, np.float64)
    count = _walk_cliques(dist, size, eps, False, dummy_v, dummy_val)
    out_v = np.empty((count, size), np.int32)
    out_val = np.empty(count, np.float64)
    _walk_cliques(dist, size, eps, True, out_v, out_val)
    return out_v, out_val


def build_rips_filtration(
    dist: DistanceMatrix,
    max_dim: int = 2,
    epsilon_max: Union[float, str, None] = FULL,
) -> Filtration:
    """All simplices of dimension <= max_dim with diameter <= epsilon_max.

    Order: value, then dimension, then lexicographic vertex order.
    """
    if not isinstance(dist, DistanceMatrix):
        dist = DistanceMatrix(dist)
    n = dist.n
    if max_dim < 0:
        raise ConfigError(f"max_dim must be non-negative, got {max_dim}")
    if max_dim >= n:
        raise DimensionTooLarge(max_dim, n)
    d = dist.entries
    if epsilon_max is None or epsilon_max == FULL:
        eps = float(d.max())
    else:
        eps = float(epsilon_max)
        if not eps > 0:
            raise ConfigError(f"epsilon_max must be positive, got {epsilon_max}")

    blocks_v, blocks_val, blocks_dim = [], [], []
    for k in range(max_dim + 1):
        v, val = _cliques(d, k + 1, eps)
        if len(val) == 0:
            break
        padded = np.full((len(val), max_dim + 1), -1, np.int32)
        padded[:, : k + 1] = v
        blocks_v.append(padded)
        blocks_val.append(val)
        blocks_dim.append(np.full(len(val), k, np.int8))
    verts = np.concatenate(blocks_v)
    vals = np.concatenate(blocks_val)
    dims = np.concatenate(blocks_dim)
    del blocks_v, blocks_val, blocks_dim

    keys = tuple(verts[:, q] for q in range(max_dim, -1, -1)) + (dims, vals)
    order = np.lexsort(keys)
    verts, vals, dims = verts[order], vals[order], dims[order]
    for a in (verts, vals, dims):
        a.setflags(write=False)
    return Filtration(verts, dims, vals, n)
