"""Midpoint and 49-tet subdivisions: structure, volume conservation, slide
schemes, and parameter validation."""

import itertools

import numpy as np
import pytest

from wctet import (InvalidParams, InvalidSlide, REGULAR_TET, SlideScheme,
                   Subdiv49Params, cube_corner_is_not_3wc, cube_corner_tet,
                   is_conforming, midpoint_subdivide, scan_slide_parameter,
                   subdivide_49, subdivision_constraints, tet_quality)

PARENT_VOL = abs(np.linalg.det(REGULAR_TET[1:] - REGULAR_TET[0])) / 6.0


def _edge_multiset(T):
    return np.sort([np.linalg.norm(T[i] - T[j])
                    for i, j in itertools.combinations(range(4), 2)])


def test_midpoint_structure():
    m = midpoint_subdivide(REGULAR_TET)
    assert m.n_vertices == 10
    assert m.n_tets == 8
    assert np.array_equal(m.vertices[:4], REGULAR_TET)
    assert is_conforming(m)
    assert abs(m.volume() - PARENT_VOL) < 1e-9 * PARENT_VOL


def test_corner_tets_are_half_scale_copies():
    m = midpoint_subdivide(REGULAR_TET)
    parent = _edge_multiset(REGULAR_TET)
    for t in range(4):
        child = _edge_multiset(m.vertices[m.tets[t]])
        assert np.allclose(child, 0.5 * parent, rtol=1e-12)


def test_slide_positions():
    # midpoint of edge (0,2) carries vertex id 5; t slides it to
    # (1/2 + t) of the way toward the target endpoint
    P = REGULAR_TET
    t = 0.1
    ma = midpoint_subdivide(P, SlideScheme("a", t))
    assert np.allclose(ma.vertices[5], 0.6 * P[0] + 0.4 * P[2], atol=1e-15)
    mb = midpoint_subdivide(P, SlideScheme("b", t))
    assert np.allclose(mb.vertices[5], 0.6 * P[2] + 0.4 * P[0], atol=1e-15)
    # the diagonal midpoints (0,1) and (2,3) never move
    for mesh in (ma, mb):
        assert np.allclose(mesh.vertices[4], 0.5 * (P[0] + P[1]), atol=1e-15)
        assert np.allclose(mesh.vertices[9], 0.5 * (P[2] + P[3]), atol=1e-15)


def test_slide_volume_conserved(rng):
    from conftest import random_tets
    for T in random_tets(rng, 10):
        for scheme in (SlideScheme(), SlideScheme("a", 0.2), SlideScheme("b", 0.13)):
            m = midpoint_subdivide(T, scheme)
            vol = abs(np.linalg.det(T[1:] - T[0])) / 6.0
            assert abs(m.volume() - vol) < 1e-9 * vol


def test_slide_validation():
    with pytest.raises(InvalidSlide):
        SlideScheme("a", 0.5)
    with pytest.raises(InvalidSlide):
        SlideScheme("b", -0.01)
    with pytest.raises(InvalidSlide):
        SlideScheme("uniform", 0.2)
    with pytest.raises(InvalidParams):
        SlideScheme("c", 0.1)


def test_scan_defaults_and_best():
    sa = scan_slide_parameter(REGULAR_TET, "a")
    assert np.allclose(sa.t_values, np.arange(1, 51) * 0.005)
    assert sa.best_is_cwc and abs(sa.best_t - 0.130) < 1e-12
    sb = scan_slide_parameter(REGULAR_TET, "b")
    assert sb.best_is_cwc and abs(sb.best_t - 0.105) < 1e-12


def test_scan_tie_breaks_to_smallest_t():
    s = scan_slide_parameter(REGULAR_TET, "a", t_values=[0.13, 0.13, 0.13])
    assert s.best_t == 0.13


def test_subdiv49_structure():
    m = subdivide_49()
    assert m.n_vertices == 24
    assert m.n_tets == 49
    assert len(m.boundary_faces()) == 36
    assert is_conforming(m)
    assert abs(m.volume() - PARENT_VOL) < 1e-9 * PARENT_VOL
    assert np.array_equal(m.vertices[:4], REGULAR_TET)


def test_subdiv49_ff_diagonal():
    m = subdivide_49(Subdiv49Params(diagonal="ff"))
    assert m.n_tets == 49
    assert is_conforming(m)
    assert abs(m.volume() - PARENT_VOL) < 1e-9 * PARENT_VOL


def test_subdiv49_arbitrary_parent(rng):
    from conftest import random_tets
    for T in random_tets(rng, 5, min_vol6=1e-2):
        m = subdivide_49(tet=T)
        vol = abs(np.linalg.det(T[1:] - T[0])) / 6.0
        assert abs(m.volume() - vol) < 1e-9 * vol
        assert is_conforming(m)


def test_subdiv49_interference_raises():
    for sc, sk in ((0.9, 0.45), (0.95, 0.4), (0.99, 0.49), (0.8, 0.49)):
        with pytest.raises(InvalidParams):
            subdivide_49(Subdiv49Params(sc, sk))


def test_subdiv49_param_validation():
    with pytest.raises(InvalidParams):
        Subdiv49Params(s_center=0.0)
    with pytest.raises(InvalidParams):
        Subdiv49Params(s_center=1.0)
    with pytest.raises(InvalidParams):
        Subdiv49Params(s_corner=0.5)
    with pytest.raises(InvalidParams):
        Subdiv49Params(diagonal="xx")


def test_subdivision_constraints_layout():
    m = subdivide_49()
    cons = subdivision_constraints()
    assert sorted(cons) == list(range(4, 24))
    for i in range(4, 8):
        assert cons[i] == ("free",)
    for i in range(8, 12):
        kind, a, n = cons[i]
        assert kind == "plane"
        assert abs(np.dot(m.vertices[i] - a, n)) < 1e-12
    for i in range(12, 24):
        kind, a, b = cons[i]
        assert kind == "segment"
        p = m.vertices[i]
        # on the segment: collinear and between the endpoints
        t = np.dot(p - a, b - a) / np.dot(b - a, b - a)
        assert 0.0 < t < 1.0
        assert np.linalg.norm(p - (a + t * (b - a))) < 1e-12


def test_cube_corner_never_3wc():
    T = cube_corner_tet()
    assert np.array_equal(T[0], [0.0, 0.0, 0.0])
    q = tet_quality(T)
    assert abs(q.h_over_r.min() + 1.0 / 3.0) < 1e-12
    assert tet_quality(cube_corner_tet((2.0, 1.0, 1.0))).h_over_r.min() <= 0.0
    assert cube_corner_is_not_3wc(2000)
    with pytest.raises(InvalidParams):
        cube_corner_tet((0.0, 1.0, 1.0))
