"""Persistence pairing by boundary-matrix reduction over GF(2)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numba
import numpy as np
from scipy.special import comb

from .diagram import PersistenceDiagram
from .errors import FaceNotFound
from .rips import Filtration


@dataclass(frozen=True, eq=False)
class BoundaryMatrix:
    """Sparse GF(2) boundary matrix in CSR-by-column layout.

    Column j holds the (ascending) filtration positions of the codimension-1
    faces of simplex j: ``indices[indptr[j]:indptr[j + 1]]``.
    """

    indptr: np.ndarray
    indices: np.ndarray
    dims: np.ndarray

    def __len__(self):
        return len(self.dims)

    def column(self, j: int) -> List[int]:
        return self.indices[self.indptr[j] : self.indptr[j + 1]].tolist()

    @classmethod
    def from_columns(cls, columns, dims) -> "BoundaryMatrix":
        lengths = [len(c) for c in columns]
        indptr = np.zeros(len(columns) + 1, np.int64)
        indptr[1:] = np.cumsum(lengths)
        flat = [i for c in columns for i in sorted(c)]
        return cls(indptr, np.array(flat, np.int64), np.asarray(dims, np.int8))


@dataclass(frozen=True, eq=False)
class Pairing:
    pairs: np.ndarray  # (P, 2) of (birth_index, death_index), sorted by death
    essentials: np.ndarray

    def pair_set(self):
        return {(int(b), int(d)) for b, d in self.pairs}

    def __eq__(self, other):
        if not isinstance(other, Pairing):
            return NotImplemented
        return self.pair_set() == other.pair_set() and set(self.essentials.tolist()) == set(
            other.essentials.tolist()
        )


def _binomial_table(n, k):
    table = np.zeros((n + 1, k + 1), np.int64)
    for a in range(n + 1):
        for r in range(k + 1):
            table[a, r] = int(comb(a, r, exact=True))
    return table


@numba.njit(cache=True)
def _fill_boundary(verts, dims, binom, offsets, lookup, indptr, indices):
    # Combinatorial-number-system rank of each simplex -> its filtration position.
    n_simplices = len(dims)
    max_dim = verts.shape[1] - 1
    for i in range(n_simplices):
        k = dims[i]
        if k < max_dim:
            r = 0
            for q in range(k + 1):
                r += binom[verts[i, q], q + 1]
            lookup[offsets[k] + r] = i
    for j in range(n_simplices):
        k = dims[j]
        if k == 0:
            continue
        base = indptr[j]
        for drop in range(k + 1):
            r = 0
            pos = 0
            for q in range(k + 1):
                if q == drop:
                    continue
                r += binom[verts[j, q], pos + 1]
                pos += 1
            face = lookup[offsets[k - 1] + r]
            if face < 0 or face >= j:
                return j
            indices[base + drop] = face
        # insertion sort of k+1 entries
        for a in range(base + 1, base + k + 1):
            x = indices[a]
            b = a - 1
            while b >= base and indices[b] > x:
                indices[b + 1] = indices[b]
                b -= 1
            indices[b + 1] = x
    return -1


def build_boundary_matrix(filtration: Filtration) -> BoundaryMatrix:
    dims = np.asarray(filtration.dims, np.int8)
    verts = np.asarray(filtration.vertices, np.int64)
    n = filtration.n_points
    max_dim = filtration.max_dim
    binom = _binomial_table(n, max_dim + 1)
    sizes = [int(binom[n, k + 1]) for k in range(max_dim)]
    offsets = np.zeros(max_dim + 1, np.int64)
    offsets[1:] = np.cumsum(sizes)
    lookup = np.full(max(int(offsets[-1]), 1), -1, np.int64)
    col_len = np.where(dims > 0, dims.astype(np.int64) + 1, 0)
    indptr = np.zeros(len(dims) + 1, np.int64)
    np.cumsum(col_len, out=indptr[1:])
    idx_dtype = np.int32 if len(dims) < 2**31 else np.int64
    indices = np.empty(int(indptr[-1]), idx_dtype)
    bad = _fill_boundary(verts, dims, binom, offsets, lookup, indptr, indices)
    if bad >= 0:
        raise FaceNotFound(int(bad))
    return BoundaryMatrix(indptr, indices, dims)


# -- optimized reduction -----------------------------------------------------------


@numba.njit(cache=True)
def _symdiff_into(a, na, b, out):
    # out[:k] = sorted symmetric difference of a[:na] and b; returns k
    i = j = k = 0
    nb = len(b)
    while i < na and j < nb:
        if a[i] < b[j]:
            out[k] = a[i]
            i += 1
            k += 1
        elif a[i] > b[j]:
            out[k] = b[j]
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < na:
        out[k] = a[i]
        i += 1
        k += 1
    while j < nb:
        out[k] = b[j]
        j += 1
        k += 1
    return k


@numba.njit(cache=True)
def _reduce_with_clearing(indptr, indices, dims, max_dim, targets, skip_row):
    n = len(dims)
    low = np.full(n, -1, np.int64)
    pivot_col = np.full(n, -1, np.int64)
    cleared = np.zeros(n, np.bool_)
    start = np.zeros(n, np.int64)
    length = np.zeros(n, np.int64)
    pool = np.empty(1024, np.int64)
    used = 0
    # two working buffers; the column being reduced ping-pongs between them
    cap = 64
    cur = np.empty(cap, np.int64)
    nxt = np.empty(cap, np.int64)
    for d in range(max_dim, 0, -1):
        target = targets[d]
        if target == 0:
            continue
        found = 0
        for j in range(n):
            if dims[j] != d or cleared[j]:
                continue
            size = 0
            for q in range(indptr[j], indptr[j + 1]):
                r = indices[q]
                if not skip_row[r]:
                    cur[size] = r
                    size += 1
            while size > 0:
                k = pivot_col[cur[size - 1]]
                if k < 0:
                    break
                other = pool[start[k] : start[k] + length[k]]
                if size + len(other) > cap:
                    cap = 2 * (size + len(other))
                    grown = np.empty(cap, np.int64)
                    grown[:size] = cur[:size]
                    cur = grown
                    nxt = np.empty(cap, np.int64)
                size = _symdiff_into(cur, size, other, nxt)
                cur, nxt = nxt, cur
            if size == 0:
                continue
            lo = cur[size - 1]
            # Exhaustive pass: clear every remaining entry that is already a
            # pivot row. Adds only columns with a lower pivot, so the low and
            # hence the pairing are unchanged, but stored columns stay short.
            p = size - 2
            while p >= 0:
                k = pivot_col[cur[p]]
                if k < 0:
                    p -= 1
                    continue
                above = size - p - 1
                other = pool[start[k] : start[k] + length[k]]
                if size + len(other) > cap:
                    cap = 2 * (size + len(other))
                    grown = np.empty(cap, np.int64)
                    grown[:size] = cur[:size]
                    cur = grown
                    nxt = np.empty(cap, np.int64)
                size = _symdiff_into(cur, size, other, nxt)
                cur, nxt = nxt, cur
                p = size - above - 1
            low[j] = lo
            pivot_col[lo] = j
            # a pivot row is a positive simplex: its own column reduces to zero
            cleared[lo] = True
            if used + size > len(pool):
                grown = np.empty(max(2 * len(pool), used + size), np.int64)
                grown[:used] = pool[:used]
                pool = grown
            pool[used : used + size] = cur[:size]
            start[j] = used
            length[j] = size
            used += size
            found += 1
            if found == target:
                break
    return low


@numba.njit(cache=True)
def _edge_classes(indptr, indices, dims, max_dim):
    # Union-find over edges in filtration order. Merging edges are the
    # negative 1-simplices: they kill H0 classes, so they can never be a
    # pivot row of a triangle column and are dropped from those columns.
    # Every other edge opens an H1 class, which bounds the number of pivots
    # each dimension can produce so the scan can stop early.
    n = len(dims)
    vertex_of = np.full(n, -1, np.int64)
    n_points = 0
    for i in range(n):
        if dims[i] == 0:
            vertex_of[i] = n_points
            n_points += 1
    parent = np.arange(n_points)
    negative = np.zeros(n, np.bool_)
    merges = 0
    edges = 0
    for j in range(n):
        if dims[j] != 1:
            continue
        edges += 1
        a = vertex_of[indices[indptr[j]]]
        b = vertex_of[indices[indptr[j] + 1]]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[max(a, b)] = min(a, b)
            merges += 1
            negative[j] = True
    targets = np.full(max_dim + 1, -1, np.int64)
    if max_dim >= 1:
        targets[1] = merges
    if max_dim >= 2:
        targets[2] = edges - merges
    return targets, negative


def _pairing_from_low(low: np.ndarray) -> Pairing:
    deaths = np.flatnonzero(low >= 0)
    births = low[deaths]
    pairs = np.column_stack([births, deaths]).astype(np.int64).reshape(-1, 2)
    paired = np.zeros(len(low), bool)
    paired[deaths] = True
    paired[births] = True
    return Pairing(pairs, np.flatnonzero(~paired).astype(np.int64))


def reduce(matrix: BoundaryMatrix) -> Pairing:
    """Standard column reduction with the clearing (twist) optimization.

    Dimensions are processed from the top down; columns whose simplex is
    already known to be a pivot row are skipped since they reduce to zero.
    Edges that merge components are removed from triangle columns up front
    (found by union-find), and the scan of a dimension stops once every
    class that can die there has died.
    """
    dims = np.asarray(matrix.dims, np.int64)
    max_dim = int(dims.max()) if len(dims) else 0
    targets, skip_row = _edge_classes(matrix.indptr, matrix.indices, dims, max_dim)
    low = _reduce_with_clearing(matrix.indptr, matrix.indices, dims, max_dim, targets, skip_row)
    return _pairing_from_low(low)


def reduce_naive(matrix: BoundaryMatrix) -> Pairing:
    """Textbook left-to-right reduction, kept as a ground-truth oracle.

    For every column, repeatedly search the earlier columns for one with the
    same lowest row and add it, until the lowest row is unique or the column
    is zero. No clearing, no pivot lookup table, no early stopping.
    """
    cols = [set(matrix.column(j)) for j in range(len(matrix))]
    lows = [-1] * len(cols)
    for j in range(len(cols)):
        while cols[j]:
            lj = max(cols[j])
            for k in range(j):
                if lows[k] == lj:
                    cols[j] ^= cols[k]
                    break
            else:
                break
        lows[j] = max(cols[j]) if cols[j] else -1
    return _pairing_from_low(np.array(lows, np.int64))


def extract_diagrams(
    pairing: Pairing, filtration: Filtration, max_homology_dim: Optional[int] = None
) -> List[PersistenceDiagram]:
    """Per-dimension diagrams in filtration values; zero-persistence pairs dropped."""
    if max_homology_dim is None:
        max_homology_dim = max(filtration.max_dim - 1, 0)
    dims = np.asarray(filtration.dims)
    vals = np.asarray(filtration.values)
    births, deaths = pairing.pairs[:, 0], pairing.pairs[:, 1]
    out = []
    for k in range(max_homology_dim + 1):
        sel = dims[births] == k
        b, d = vals[births[sel]], vals[deaths[sel]]
        keep = d > b
        ess = pairing.essentials[dims[pairing.essentials] == k]
        pts = np.concatenate(
            [np.column_stack([b[keep], d[keep]]), np.column_stack([vals[ess], np.full(len(ess), np.inf)])]
        )
        out.append(PersistenceDiagram(k, pts, dropped_zero=int(np.count_nonzero(~keep))))
    return out


def persistence_diagrams(filtration: Filtration, max_homology_dim: Optional[int] = None):
    """Convenience: boundary matrix, reduction and extraction in one call."""
    pairing = reduce(build_boundary_matrix(filtration))
    return extract_diagrams(pairing, filtration, max_homology_dim)
