import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from oracles import diagrams_brute
from toporisk.diagram import PersistenceDiagram
from toporisk.embedding import PointCloud
from toporisk.errors import FaceNotFound
from toporisk.homology import (
    BoundaryMatrix,
    _pairing_from_low,
    Pairing,
    build_boundary_matrix,
    extract_diagrams,
    persistence_diagrams,
    reduce,
    reduce_naive,
)
from toporisk.rips import DistanceMatrix, Filtration, build_rips_filtration, pairwise_distances

SQRT2 = math.sqrt(2)


def filt(points, max_dim=2, eps="full"):
    return build_rips_filtration(pairwise_distances(PointCloud(points)), max_dim, eps)


def shuffled_reduction(matrix, rng):
    """Left-to-right reduction that also mixes in random earlier columns.

    Besides the additions that clear the lowest entry, it adds randomly
    chosen reduced columns whose pivot lies strictly below the current one.
    Those additions change the column but must never change the pairing.
    """
    cols = [set(matrix.column(j)) for j in range(len(matrix))]
    owner = {}
    for j, col in enumerate(cols):
        while col:
            lo = max(col)
            extra = [k for r, k in owner.items() if r < lo]
            if extra:
                for k in rng.permutation(extra)[: rng.integers(0, 3)]:
                    col ^= cols[k]
            lo = max(col)
            if lo not in owner:
                break
            col ^= cols[owner[lo]]
        if col:
            owner[max(col)] = j
    lows = np.full(len(cols), -1)
    for r, j in owner.items():
        lows[j] = r
    return _pairing_from_low(lows)


def test_boundary_examples():
    f = filt([[0.0], [1.0]], max_dim=1)
    bm = build_boundary_matrix(f)
    assert [bm.column(j) for j in range(3)] == [[], [], [0, 1]]
    single = Filtration(np.zeros((1, 1), np.int32), np.zeros(1, np.int8), np.zeros(1), 1)
    assert build_boundary_matrix(single).column(0) == []
    tri = build_rips_filtration(DistanceMatrix(np.ones((3, 3)) - np.eye(3)), 2)
    bm = build_boundary_matrix(tri)
    assert bm.column(6) == [3, 4, 5]


def test_boundary_column_sizes(rng):
    f = filt(rng.random((8, 3)), 3)
    bm = build_boundary_matrix(f)
    for j in range(len(f)):
        col = bm.column(j)
        assert len(col) == (f.dims[j] + 1 if f.dims[j] else 0)
        assert all(i < j for i in col)
        assert col == sorted(col)


def test_missing_face_detected():
    # edge (0, 1) listed without vertex 1 before it
    verts = np.array([[0, -1], [0, 1], [1, -1]], np.int32)
    bad = Filtration(verts, np.array([0, 1, 0], np.int8), np.array([0.0, 1.0, 0.0]), 2)
    with pytest.raises(FaceNotFound):
        build_boundary_matrix(bad)


def test_reduce_two_vertices():
    bm = build_boundary_matrix(filt([[0.0], [1.0]], max_dim=1))
    p = reduce(bm)
    assert p.pair_set() == {(1, 2)}
    assert p.essentials.tolist() == [0]


def test_reduce_isolated_points():
    f = filt([[0.0], [10.0], [20.0]], max_dim=1, eps=1.0)
    p = reduce(build_boundary_matrix(f))
    assert p.pair_set() == set() and p.essentials.tolist() == [0, 1, 2]


def test_unit_square_pairing(unit_square):
    f = filt(unit_square)
    p = reduce(build_boundary_matrix(f))
    h1 = [(b, d) for b, d in p.pair_set() if f.dims[b] == 1 and f.values[d] > f.values[b]]
    assert len(h1) == 1
    b, d = h1[0]
    assert f[b].vertices == (2, 3)  # last edge of value 1
    assert f.values[d] == pytest.approx(SQRT2)
    assert f.dims[d] == 2


def test_extract_examples(unit_square):
    d0, = persistence_diagrams(filt([[0.0], [1.0]], max_dim=1))
    assert d0 == PersistenceDiagram(0, [(0, math.inf), (0, 1)])
    d0, d1 = persistence_diagrams(filt(unit_square))
    assert d1.points.tolist() == [[1.0, SQRT2]]
    assert d0.points.tolist() == [[0, 1], [0, 1], [0, 1], [0, math.inf]]
    tri = filt([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])
    d0, d1 = persistence_diagrams(tri)
    assert len(d1) == 0 and d1.dropped_zero >= 0


def pairing_invariants(p: Pairing, f: Filtration):
    seen = []
    for b, d in p.pairs:
        assert b < d
        assert f.dims[d] == f.dims[b] + 1
        seen += [b, d]
    seen += p.essentials.tolist()
    assert sorted(seen) == list(range(len(f)))


small_clouds = st.tuples(st.integers(3, 10), st.integers(2, 3)).flatmap(
    lambda shape: arrays(np.float64, shape, elements=st.floats(-2, 2, allow_nan=False, width=32))
)


@given(small_clouds, st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_optimized_equals_naive_and_shuffled(points, max_dim, seed):
    max_dim = min(max_dim, len(points) - 1)
    f = filt(points, max_dim)
    bm = build_boundary_matrix(f)
    fast, naive = reduce(bm), reduce_naive(bm)
    assert fast == naive
    assert shuffled_reduction(bm, np.random.default_rng(seed)) == fast
    pairing_invariants(fast, f)


@given(small_clouds, st.floats(0.2, 3.0))
def test_truncated_filtration_equals_naive(points, eps):
    f = filt(points, min(2, len(points) - 1), eps)
    bm = build_boundary_matrix(f)
    assert reduce(bm) == reduce_naive(bm)


@given(small_clouds)
def test_diagrams_match_independent_oracle(points):
    f = filt(points, 2)
    got = persistence_diagrams(f)
    want = diagrams_brute(points.tolist(), 2)
    for dgm in got:
        expect = np.array(want[dgm.dim], dtype=float).reshape(-1, 2)
        np.testing.assert_allclose(dgm.points, expect, rtol=0, atol=1e-12)


@given(small_clouds)
def test_h0_bar_count_and_single_essential(points):
    f = filt(points, 2)
    p = reduce(build_boundary_matrix(f))
    h0_bars = sum(1 for b, _ in p.pairs if f.dims[b] == 0) + sum(1 for e in p.essentials if f.dims[e] == 0)
    assert h0_bars == len(points)
    d0, d1 = extract_diagrams(p, f)
    assert len(d0) + d0.dropped_zero == len(points)
    assert len(d0.essential) == 1 and len(d1.essential) == 0


def test_tetrahedra_h2():
    # octahedron vertices: a 2-sphere appears before the solid fills in
    pts = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]], float)
    f = filt(pts, 3)
    dgms = persistence_diagrams(f, max_homology_dim=2)
    assert dgms[2].points.tolist() == [[SQRT2, 2.0]]
    assert len(dgms[1]) == 0
    assert reduce(build_boundary_matrix(f)) == reduce_naive(build_boundary_matrix(f))


def test_from_columns_roundtrip():
    bm = BoundaryMatrix.from_columns([[], [], [0, 1]], [0, 0, 1])
    assert reduce(bm).pair_set() == {(1, 2)}
