import numpy as np
import pytest

from wctet.delaunay import delaunay3d
from wctet.errors import (DegenerateTet, DuplicateTet, IndexOutOfRange,
                          NotConforming)
from wctet.mesh import TetMesh, is_conforming, is_delaunay, mesh_quality
from wctet.tilings import LatticeParams, space_tiling

PTS5 = np.array([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], float)


def test_validation_errors():
    with pytest.raises(IndexOutOfRange):
        TetMesh(PTS5[:4], [[0, 1, 2, 9]])
    with pytest.raises(IndexOutOfRange):
        TetMesh(PTS5[:4], [[0, 1, 2, -1]])
    with pytest.raises(DegenerateTet):
        TetMesh(PTS5[:4], [[0, 1, 2, 2]])
    with pytest.raises(DuplicateTet):
        TetMesh(PTS5, [[0, 1, 2, 3], [3, 2, 1, 0]])
    with pytest.raises(DegenerateTet):
        flat = np.array([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)], float)
        TetMesh(flat, [[0, 1, 2, 3]])
    with pytest.raises(ValueError):
        TetMesh(np.zeros((4, 2)), [[0, 1, 2, 3]])
    with pytest.raises(ValueError):
        TetMesh(PTS5, [[0, 1, 2]])


def test_canonical_orientation():
    m = TetMesh(PTS5[:4], [[0, 2, 1, 3]])
    assert m.volumes()[0] > 0
    assert np.array_equal(m.vertices, PTS5[:4])
    m2 = TetMesh(PTS5[:4], [[0, 1, 2, 3]])
    assert np.all(m2.volumes() > 0)


def test_arrays_frozen():
    m = TetMesh(PTS5[:4], [[0, 1, 2, 3]])
    with pytest.raises(ValueError):
        m.vertices[0, 0] = 7.0
    with pytest.raises(ValueError):
        m.tets[0, 0] = 1


def test_faces_edges_counts():
    m = TetMesh(PTS5[:4], [[0, 1, 2, 3]])
    assert len(m.faces()) == 4
    assert len(m.edges()) == 6
    assert len(m.boundary_faces()) == 4
    assert m.volume() == pytest.approx(1.0 / 6.0)

    two = TetMesh(PTS5, [[0, 1, 2, 3], [1, 2, 3, 4]])
    assert len(two.faces()) == 7
    assert len(two.boundary_faces()) == 6
    assert two.faces()[(1, 2, 3)] == [0, 1]


def test_interior_vertices():
    m = space_tiling(LatticeParams(0.7, 0.8))
    inner = m.interior_vertices()
    assert len(inner) == 4
    bfv = set()
    for f in m.boundary_faces():
        bfv.update(f)
    assert not bfv.intersection(inner.tolist())


def test_with_vertices():
    m = TetMesh(PTS5[:4], [[0, 1, 2, 3]])
    m2 = m.with_vertices(m.vertices * 2.0)
    assert np.array_equal(m2.tets, m.tets)
    assert m2.volume() == pytest.approx(8.0 * m.volume())


def test_conforming_detects_shared_face_overuse():
    # three tets on one base face: the third overlaps the first
    pts = np.array([(0, 0, 0), (1, 0, 0), (0, 1, 0),
                    (0.2, 0.2, 1.0), (0.2, 0.2, -1.0), (0.3, 0.3, 0.5)], float)
    good = TetMesh(pts, [[0, 1, 2, 3], [0, 1, 2, 4]])
    assert is_conforming(good)
    bad = TetMesh(pts, [[0, 1, 2, 3], [0, 1, 2, 4], [0, 1, 2, 5]])
    diag = is_conforming(bad)
    assert not diag
    assert diag.bad_faces
    with pytest.raises(NotConforming):
        bad.boundary_faces()


def test_conforming_detects_interior_overlap():
    # a small tet strictly inside a big one: all face counts are fine but
    # the interiors intersect
    big = np.array([(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4)], float)
    small = big * 0.25 + 0.5
    pts = np.vstack([big, small])
    m = TetMesh(pts, [[0, 1, 2, 3], [4, 5, 6, 7]])
    diag = is_conforming(m)
    assert not diag
    assert diag.bad_pairs == [(0, 1)]


def test_conforming_vertex_on_face_is_rejected():
    # second tet hangs off a point placed in the middle of the first's face
    pts = np.array([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
                    (0.25, 0.25, 0.0), (0.2, 0.2, -0.7)], float)
    m = TetMesh(pts, [[0, 1, 2, 3], [0, 1, 4, 5]])
    assert not is_conforming(m)


def test_mesh_quality_report():
    m = space_tiling(LatticeParams(0.7, 0.8))
    r = mesh_quality(m)
    assert r.n_tets == m.n_tets
    assert r.n_vertices == m.n_vertices
    assert r.h_over_r_min <= r.h_over_r_max
    assert r.completely_wc == (r.all_2wc and r.all_3wc)
    assert r.completely_wc
    # extrema locations point at tets attaining the extrema
    T = m.tet_coords()
    from wctet import kernels
    _, _, hR, face, _, _, _ = kernels.quality_arrays(T)
    i = r.argext["h_over_r_min"]
    assert hR[i].min() == pytest.approx(r.h_over_r_min, abs=1e-12)
    j = r.argext["face_angle_max"]
    assert face[j].max() == pytest.approx(r.face_angle_max, abs=1e-12)


def test_is_delaunay_flip():
    # triangular bipyramid: connecting through the equator violates the
    # empty-sphere rule, connecting through the axis satisfies it
    tri = [(np.cos(a), np.sin(a), 0.0) for a in (0, 2 * np.pi / 3, 4 * np.pi / 3)]
    pts = np.array(tri + [(0, 0, 0.8), (0, 0, -0.8)])
    bad = TetMesh(pts, [[0, 1, 2, 3], [0, 1, 2, 4]])
    assert is_conforming(bad)
    assert not is_delaunay(bad)
    good = delaunay3d(pts)
    assert good.n_tets == 3
    assert is_delaunay(good)


def test_is_delaunay_requires_conforming():
    pts = np.array([(0, 0, 0), (1, 0, 0), (0, 1, 0),
                    (0.2, 0.2, 1.0), (0.2, 0.2, -1.0), (0.3, 0.3, 0.5)], float)
    bad = TetMesh(pts, [[0, 1, 2, 3], [0, 1, 2, 4], [0, 1, 2, 5]])
    with pytest.raises(NotConforming):
        is_delaunay(bad)
