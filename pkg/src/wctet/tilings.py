"""Generators for the Sommerville tetrahedron and the two-parameter lattice
family of space, slab, and prism tilings.

Lattice vertices are (i + j/2 + k/2, a*j, b*k) for integer (i, j, k).  Each
unit index cell (the parallelepiped spanned by u1, u2, u3) is cut into six
tetrahedra, four of "type 1" (three vertices in one z plane) and two of
"type 2" (two vertices in each of two planes).  The cut is chosen so every
tet of a patch stays inside the patch parallelepiped, which keeps finite
patches convex and hull-filling.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateParams
from .mesh import TetMesh

SQRT2_OVER_2 = np.sqrt(2.0) / 2.0

# Offsets of the six tets tiling one index cell.  Orientation per tet is
# normalized by TetMesh; ordering here is the enumeration order.
_CELL = (
    ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((0, 1, 0), (1, 1, 0), (1, 0, 0), (0, 1, 1)),
    ((0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 0, 0)),
    ((0, 1, 1), (1, 1, 1), (1, 0, 1), (1, 1, 0)),
    ((1, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)),
    ((0, 1, 0), (1, 0, 0), (0, 0, 1), (0, 1, 1)),
)


@dataclass(frozen=True)
class LatticeParams:
    """Parameters (a, b) of the lattice family; basis u1=(1,0,0),
    u2=(1/2,a,0), u3=(1/2,0,b)."""

    a: float = SQRT2_OVER_2
    b: float = SQRT2_OVER_2

    def __post_init__(self):
        if not (self.a > 0.0 and self.b > 0.0):
            raise DegenerateParams("lattice parameters must be positive, got a=%r b=%r"
                                   % (self.a, self.b))

    @property
    def basis(self):
        return np.array([[1.0, 0.0, 0.0],
                         [0.5, self.a, 0.0],
                         [0.5, 0.0, self.b]])


def _as_range(r, name):
    if isinstance(r, int):
        r = (0, r)
    lo, hi = int(r[0]), int(r[1])
    if hi <= lo:
        raise DegenerateParams("%s is empty: (%d, %d)" % (name, lo, hi))
    return lo, hi


@dataclass(frozen=True)
class TilingExtent:
    """Half-open integer index intervals along the three lattice axes.

    An int n stands for (0, n).  Intervals count vertex translates; the
    cells meshed by space_tiling sit between consecutive indices, so an
    axis with n indices carries n-1 cells.
    """

    i_range: tuple = (0, 4)
    j_range: tuple = (0, 4)
    k_range: tuple = (0, 3)

    def __post_init__(self):
        object.__setattr__(self, "i_range", _as_range(self.i_range, "i_range"))
        object.__setattr__(self, "j_range", _as_range(self.j_range, "j_range"))
        object.__setattr__(self, "k_range", _as_range(self.k_range, "k_range"))

    def counts(self):
        """Vertex counts (ni, nj, nk) per axis."""
        return tuple(hi - lo for lo, hi in (self.i_range, self.j_range, self.k_range))


@dataclass(frozen=True)
class PrismSpec:
    """Rectangular-prism cross-section ratio p:q, with uniform scale."""

    p: int = 1
    q: int = 1
    scale: float = 1.0

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise DegenerateParams("p and q must be >= 1, got p=%r q=%r" % (self.p, self.q))
        if not self.scale > 0.0:
            raise DegenerateParams("scale must be positive, got %r" % (self.scale,))


def sommerville_tet():
    """The second Sommerville tetrahedron, circumcenter at the origin."""
    return np.array([(-1.0, -2.0, 0.0),
                     (1.0, 0.0, -2.0),
                     (-1.0, 2.0, 0.0),
                     (1.0, 0.0, 2.0)])


def lattice_point(i, j, k, params: LatticeParams):
    return np.array([i + 0.5 * j + 0.5 * k, params.a * j, params.b * k])


def lattice_points(params: LatticeParams, extent: TilingExtent):
    """All lattice vertices with indices in the extent, ordered
    lexicographically in (i, j, k)."""
    (i0, i1), (j0, j1), (k0, k1) = extent.i_range, extent.j_range, extent.k_range
    pts = [lattice_point(i, j, k, params)
           for i in range(i0, i1) for j in range(j0, j1) for k in range(k0, k1)]
    return np.array(pts)


def space_tiling(params: LatticeParams, extent: TilingExtent = None,
                 scale: float = 1.0) -> TetMesh:
    """Mesh the parallelepiped patch spanned by the extent with six tets
    per index cell.  Needs at least two vertex layers along each axis."""
    if extent is None:
        extent = TilingExtent()
    (i0, i1), (j0, j1), (k0, k1) = extent.i_range, extent.j_range, extent.k_range
    if i1 - i0 < 2 or j1 - j0 < 2 or k1 - k0 < 2:
        raise DegenerateParams("extent must span >= 2 index layers per axis to "
                               "contain cells, got counts %s" % (extent.counts(),))
    vid = {}
    verts = []
    tets = []

    def v(i, j, k):
        key = (i, j, k)
        n = vid.get(key)
        if n is None:
            n = len(verts)
            vid[key] = n
            verts.append(lattice_point(i, j, k, params))
        return n

    for i in range(i0, i1 - 1):
        for j in range(j0, j1 - 1):
            for k in range(k0, k1 - 1):
                for offs in _CELL:
                    tets.append([v(i + di, j + dj, k + dk) for di, dj, dk in offs])
    return TetMesh(np.array(verts) * scale, np.array(tets))


def slab_tiling(params: LatticeParams, layers: int = 1, scale: float = 1.0,
                lateral: int = 4) -> TetMesh:
    """Slab of the space tiling: z runs over `layers` cell layers, from 0 to
    scale*b*layers; `lateral` is the vertex count of the truncated x and y
    extents."""
    if layers < 1:
        raise DegenerateParams("layers must be >= 1, got %r" % (layers,))
    if lateral < 2:
        raise DegenerateParams("lateral must be >= 2, got %r" % (lateral,))
    extent = TilingExtent((0, lateral), (0, lateral), (0, layers + 1))
    return space_tiling(params, extent, scale=scale)


def prism_tiling(spec: PrismSpec, length: int = 4) -> TetMesh:
    """Prism with cross-section side ratio p:q at a = b = sqrt(2)/2, so all
    tets are congruent.  `length` is the cell count along x."""
    params = LatticeParams(SQRT2_OVER_2, SQRT2_OVER_2)
    extent = TilingExtent((0, length + 1), (0, spec.p + 1), (0, spec.q + 1))
    return space_tiling(params, extent, scale=spec.scale)
