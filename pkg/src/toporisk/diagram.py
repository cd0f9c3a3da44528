"""Persistence diagrams and the metrics computed on them."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Union

import numpy as np
from scipy.spatial.distance import cdist

from .embedding import PointCloud
from .errors import DimensionMismatch

INF_TOKEN = "inf"


@dataclass(frozen=True, eq=False)
class PersistenceDiagram:
    """Multiset of (birth, death) points in one homology dimension.

    Points are kept sorted by (birth, death); essential classes carry
    ``death == inf``. ``dropped_zero`` counts the zero-persistence pairs that
    were discarded when the diagram was extracted.
    """

    dim: int
    points: np.ndarray = field(default_factory=lambda: np.empty((0, 2)))
    dropped_zero: int = 0

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64).reshape(-1, 2)
        if np.any(np.isnan(pts)):
            raise ValueError("diagram points must not be NaN")
        if np.any(pts[:, 0] < 0) or np.any(~np.isfinite(pts[:, 0])):
            raise ValueError("births must be finite and non-negative")
        if np.any(pts[:, 1] <= pts[:, 0]):
            raise ValueError("every point needs death > birth")
        pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.points, other.points)

    def __repr__(self):
        return f"PersistenceDiagram(dim={self.dim}, points={self.points.tolist()})"

    @property
    def finite(self) -> np.ndarray:
        return self.points[np.isfinite(self.points[:, 1])]

    @property
    def essential(self) -> np.ndarray:
        return self.points[~np.isfinite(self.points[:, 1])]

    def scaled(self, c: float) -> "PersistenceDiagram":
        return PersistenceDiagram(self.dim, self.points * c, self.dropped_zero)


@dataclass(frozen=True, eq=False)
class Spectrum:
    lifetimes: np.ndarray

    def __post_init__(self):
        lt = np.array(self.lifetimes, dtype=np.float64).ravel()
        if np.any(~np.isfinite(lt)) or np.any(lt <= 0):
            raise ValueError("lifetimes must be finite and strictly positive")
        lt.setflags(write=False)
        object.__setattr__(self, "lifetimes", lt)

    def __len__(self):
        return len(self.lifetimes)


SpectrumLike = Union[Spectrum, Sequence[float], np.ndarray]


def _as_array(spectrum: SpectrumLike) -> np.ndarray:
    if isinstance(spectrum, Spectrum):
        return spectrum.lifetimes
    return Spectrum(spectrum).lifetimes


def lifetimes(diagram: PersistenceDiagram) -> Spectrum:
    fin = diagram.finite
    return Spectrum(fin[:, 1] - fin[:, 0])


def combined_spectrum(diagrams: Iterable[PersistenceDiagram], dims=(1,)) -> Spectrum:
    parts = [lifetimes(d).lifetimes for d in diagrams if d.dim in dims]
    return Spectrum(np.concatenate(parts) if parts else [])


def total_persistence(spectrum: SpectrumLike) -> float:
    """L1 norm of the lifetimes (0 for an empty spectrum)."""
    lt = _as_array(spectrum)
    return math.fsum(lt.tolist())


def persistence_entropy(spectrum: SpectrumLike) -> float:
    """Shannon entropy (natural log) of the lifetimes normalized to sum 1."""
    lt = _as_array(spectrum)
    if len(lt) < 2:
        return 0.0
    p = lt / total_persistence(lt)
    return math.fsum((-p * np.log(p)).tolist())


def mean_lifetime(spectrum: SpectrumLike) -> float:
    lt = _as_array(spectrum)
    if len(lt) == 0:
        return 0.0
    return total_persistence(lt) / len(lt)


# -- bottleneck ----------------------------------------------------------------


def _has_perfect_matching(allowed: np.ndarray) -> bool:
    # Kuhn's augmenting paths; allowed is a square boolean adjacency matrix.
    size = allowed.shape[0]
    adj = [np.flatnonzero(row).tolist() for row in allowed]
    match_col = [-1] * size
    for root in range(size):
        if not adj[root]:
            return False
        seen = [False] * size
        # iterative DFS: stack of (row, next adjacency position)
        stack = [[root, 0]]
        path_cols = []
        found = False
        while stack:
            top = stack[-1]
            row, pos = top
            if pos == len(adj[row]):
                stack.pop()
                if path_cols:
                    path_cols.pop()
                continue
            top[1] += 1
            col = adj[row][pos]
            if seen[col]:
                continue
            seen[col] = True
            path_cols.append(col)
            if match_col[col] == -1:
                found = True
                break
            stack.append([match_col[col], 0])
        if not found:
            return False
        # flip the alternating path: rows on the stack take the cols on the path
        for (row, _), col in zip(stack, path_cols):
            match_col[col] = row
    return True


def _finite_bottleneck(a: np.ndarray, b: np.ndarray) -> float:
    n, m = len(a), len(b)
    if n + m == 0:
        return 0.0
    size = n + m
    cost = np.full((size, size), np.inf)
    if n and m:
        cost[:n, :m] = np.maximum(
            np.abs(a[:, None, 0] - b[None, :, 0]), np.abs(a[:, None, 1] - b[None, :, 1])
        )
    ia = np.arange(n)
    jb = np.arange(m)
    cost[ia, m + ia] = (a[:, 1] - a[:, 0]) / 2.0
    cost[n + jb, jb] = (b[:, 1] - b[:, 0]) / 2.0
    cost[n:, m:] = 0.0

    candidates = np.unique(cost[np.isfinite(cost)])
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _has_perfect_matching(cost <= candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def bottleneck_distance(a: PersistenceDiagram, b: PersistenceDiagram) -> float:
    """Exact bottleneck distance under the L-infinity ground metric.

    Unmatched points go to the diagonal. Essential classes only match each
    other (sorted births paired in order); a count mismatch gives ``inf``.
    """
    if a.dim != b.dim:
        raise ValueError(f"diagrams are in different dimensions ({a.dim}, {b.dim})")
    ea, eb = np.sort(a.essential[:, 0]), np.sort(b.essential[:, 0])
    if len(ea) != len(eb):
        return math.inf
    ess = float(np.max(np.abs(ea - eb))) if len(ea) else 0.0
    return max(ess, _finite_bottleneck(a.finite, b.finite))


def hausdorff_distance(x: PointCloud, y: PointCloud) -> float:
    px = x.points if isinstance(x, PointCloud) else np.atleast_2d(np.asarray(x, float))
    py = y.points if isinstance(y, PointCloud) else np.atleast_2d(np.asarray(y, float))
    if px.shape[1] != py.shape[1]:
        raise DimensionMismatch(px.shape[1], py.shape[1])
    d = cdist(px, py)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


# -- serialization ---------------------------------------------------------------


def diagram_rows(diagrams: Iterable[PersistenceDiagram]) -> List[dict]:
    rows = []
    for dgm in diagrams:
        for b, d in dgm.points.tolist():
            rows.append({"dim": dgm.dim, "birth": b, "death": d if math.isfinite(d) else INF_TOKEN})
    return rows


def diagrams_to_json(diagrams: Iterable[PersistenceDiagram]) -> str:
    return json.dumps(diagram_rows(diagrams))


def diagrams_from_json(text: str) -> List[PersistenceDiagram]:
    by_dim = {}
    for row in json.loads(text):
        death = math.inf if row["death"] == INF_TOKEN else float(row["death"])
        by_dim.setdefault(int(row["dim"]), []).append((float(row["birth"]), death))
    return [PersistenceDiagram(k, by_dim[k]) for k in sorted(by_dim)]
