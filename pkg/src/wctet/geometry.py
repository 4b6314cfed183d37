"""Single-simplex geometry: circumspheres, heights, angles, well-centeredness.

Conventions used throughout the package:

* a tetrahedron is any (4, 3) array-like of vertex coordinates;
* facet f of a tetrahedron is the triangle opposite vertex f;
* h is the signed height of the tet circumcenter over a facet plane,
  positive when the circumcenter lies on the same side as the opposite
  vertex, and the facet ratio is h/R with R the circumradius.  Its range
  over non-degenerate tets is (-1, 1);
* dihedral angles are interior: 180 degrees minus the angle between the
  outward facet normals (the regular tet measures arccos(1/3) = 70.53);
* a tet is 3-well-centered iff min h/R > 0, 2-well-centered iff all 12
  face angles are below 90 degrees, and completely well-centered iff both.
  Predicates are strict with zero tolerance: borderline is not
  well-centered.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateSimplex

# R/l of the regular tetrahedron, the global minimum of that ratio
R_OVER_L_MIN = np.sqrt(3.0 / 8.0)


@dataclass(frozen=True)
class Circumsphere:
    center: np.ndarray
    radius: float


@dataclass(frozen=True)
class TetQuality:
    h_over_r: np.ndarray          # (4,) signed, per facet
    face_angles_deg: np.ndarray   # (12,)
    dihedral_angles_deg: np.ndarray  # (6,)
    r_over_l: float


@dataclass(frozen=True)
class WcClass:
    is_2wc: bool
    is_3wc: bool
    is_dihedral_acute: bool

    @property
    def completely_wc(self):
        return self.is_2wc and self.is_3wc


def _as_tet(t):
    t = np.asarray(t, float)
    if t.shape != (4, 3):
        raise ValueError("expected a (4, 3) tetrahedron, got shape %s" % (t.shape,))
    if not np.isfinite(t).all():
        raise ValueError("non-finite vertex coordinate")
    return t


def _check_tet(t):
    t = _as_tet(t)
    # scale-aware degeneracy cutoff: det of the edge matrix vs max edge cubed
    edges = t[1:] - t[0]
    det = np.linalg.det(edges)
    emax = max(np.linalg.norm(t[i] - t[j]) for i in range(4) for j in range(i + 1, 4))
    if abs(det) < 1e-12 * emax ** 3:
        raise DegenerateSimplex("tetrahedron is coplanar within tolerance")
    return t


def circumsphere_tet(t) -> Circumsphere:
    """Circumcenter and circumradius of a tetrahedron."""
    t = _check_tet(t)
    cen, R, _, _, _, _, _ = kernels.quality_arrays(t[None])
    return Circumsphere(cen[0], float(R[0]))


def circumcircle_tri(t) -> Circumsphere:
    """Circumcenter (in-plane) and circumradius of a triangle in 3-space."""
    t = np.asarray(t, float)
    if t.shape != (3, 3):
        raise ValueError("expected a (3, 3) triangle, got shape %s" % (t.shape,))
    a, b, c = t
    u = b - a
    w = c - a
    n = np.cross(u, w)
    nn = np.linalg.norm(n)
    emax = max(np.linalg.norm(u), np.linalg.norm(w), np.linalg.norm(c - b))
    if nn < 1e-12 * emax ** 2:
        raise DegenerateSimplex("triangle is collinear within tolerance")
    # solve in the plane: center = a + x*u + y*w with |.-a| = |.-b| = |.-c|
    G = np.array([[u @ u, u @ w], [u @ w, w @ w]])
    rhs = 0.5 * np.array([u @ u, w @ w])
    x, y = np.linalg.solve(G, rhs)
    cen = a + x * u + y * w
    return Circumsphere(cen, float(np.linalg.norm(cen - a)))


def signed_facet_height(t, facet_index: int) -> float:
    """Signed height h of the circumcenter over facet facet_index."""
    t = _check_tet(t)
    if facet_index not in (0, 1, 2, 3):
        raise ValueError("facet_index must be 0..3")
    _, R, hR, _, _, _, _ = kernels.quality_arrays(t[None])
    return float(hR[0, facet_index] * R[0])


def tet_quality(t) -> TetQuality:
    """All quality numbers of one tetrahedron."""
    t = _check_tet(t)
    _, _, hR, face, dih, rl, _ = kernels.quality_arrays(t[None])
    return TetQuality(hR[0], face[0], dih[0], float(rl[0]))


def classify(t) -> WcClass:
    """Strict well-centeredness predicates."""
    q = tet_quality(t)
    return WcClass(
        is_2wc=bool(q.face_angles_deg.max() < 90.0),
        is_3wc=bool(q.h_over_r.min() > 0.0),
        is_dihedral_acute=bool(q.dihedral_angles_deg.max() < 90.0),
    )


def outside_equatorial_ball(facet, v) -> bool:
    """True iff v lies strictly outside the equatorial ball of the facet.

    The equatorial ball is the 3-ball whose equator is the facet's
    circumcircle.  A tet is 3-well-centered iff every vertex is outside the
    equatorial ball of its opposite facet.
    """
    cs = circumcircle_tri(facet)
    return bool(np.linalg.norm(np.asarray(v, float) - cs.center) > cs.radius)
