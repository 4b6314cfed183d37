"""Delaunay construction against the brute-force oracle and on degenerate
inputs."""

import itertools

import numpy as np
import pytest

from wctet import (AllCoplanar, TooFewPoints, brute_force_delaunay,
                   delaunay3d, is_conforming, is_delaunay)


def _tet_set(m):
    return {tuple(sorted(t)) for t in m.tets.tolist()}


def test_matches_brute_force_on_random_sets(rng):
    for _ in range(20):
        n = int(rng.integers(8, 15))
        pts = rng.uniform(-1.0, 1.0, (n, 3))
        got = _tet_set(delaunay3d(pts))
        want = {tuple(sorted(t)) for t in brute_force_delaunay(pts)}
        assert got == want


def test_cospherical_grid():
    # every 2x2x2 subcube of the integer grid is cospherical, so all the
    # tie-break paths get exercised
    grid = np.array(list(itertools.product((0.0, 1.0, 2.0), repeat=3)))
    m = delaunay3d(grid)
    assert is_conforming(m)
    assert is_delaunay(m)
    assert abs(m.volume() - 8.0) < 1e-9
    assert set(m.tets.ravel().tolist()) == set(range(27))
    again = delaunay3d(grid)
    assert np.array_equal(m.tets, again.tets)


def test_covers_convex_hull(rng):
    corners = np.array(list(itertools.product((0.0, 1.0), repeat=3)))
    for _ in range(5):
        pts = np.vstack([corners, rng.uniform(0.05, 0.95, (15, 3))])
        m = delaunay3d(pts)
        assert abs(m.volume() - 1.0) < 1e-9
        assert is_conforming(m)
        assert is_delaunay(m)


def test_output_indexes_input_points(rng):
    pts = rng.uniform(-1.0, 1.0, (12, 3))
    m = delaunay3d(pts)
    assert np.array_equal(m.vertices, pts)
    assert m.tets.min() >= 0 and m.tets.max() < len(pts)


def test_too_few_points():
    with pytest.raises(TooFewPoints):
        delaunay3d(np.zeros((3, 3)))
    with pytest.raises(TooFewPoints):
        delaunay3d(np.ones((6, 3)))   # six copies of one point


def test_all_coplanar():
    pts = np.zeros((10, 3))
    pts[:, 0] = np.arange(10)
    pts[:, 1] = np.arange(10) ** 2
    with pytest.raises(AllCoplanar):
        delaunay3d(pts)


def test_bad_shape():
    with pytest.raises(ValueError):
        delaunay3d(np.zeros((4, 2)))
    with pytest.raises(ValueError):
        delaunay3d(np.zeros(12))
