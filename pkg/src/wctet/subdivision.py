"""Tetrahedron subdivisions: midpoint 8-tet split with vertex sliding, and
the 49-tet subdivision of the regular tetrahedron.

Midpoint subdivision conventions (fixed for determinism): the central
octahedron diagonal joins the midpoints of the lowest-index pair of
opposite parent edges, (0,1) and (2,3); those two midpoints never move.
Scheme "a" slides the four remaining midpoints toward their edge's
endpoint on parent edge (0,1).  Scheme "b" slides each toward the next
vertex of the directed cycle 0 -> 2 -> 1 -> 3 -> 0.  A midpoint slid by t
sits at (1/2 + t) of the way toward the target endpoint.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidParams, InvalidSlide
from .mesh import TetMesh
from .optimize import OptimizeSpec, optimize, softmin_polish

REGULAR_TET = np.array([(1.0, 1.0, 1.0),
                        (1.0, -1.0, -1.0),
                        (-1.0, 1.0, -1.0),
                        (-1.0, -1.0, 1.0)])

_MID_KEYS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
_SLIDE_TARGETS = {
    "a": {(0, 2): 0, (0, 3): 0, (1, 2): 1, (1, 3): 1},
    "b": {(0, 2): 2, (0, 3): 0, (1, 2): 1, (1, 3): 3},
}


@dataclass(frozen=True)
class SlideScheme:
    """variant 'uniform' (t must be 0), 'a', or 'b'; t in [0, 1/2)."""

    variant: str = "uniform"
    t: float = 0.0

    def __post_init__(self):
        v = str(self.variant).lower()
        if v.startswith("scheme"):
            v = v[len("scheme"):].lstrip("_")
        if v not in ("uniform", "a", "b"):
            raise InvalidParams("unknown scheme variant %r" % (self.variant,))
        object.__setattr__(self, "variant", v)
        if not (0.0 <= self.t < 0.5):
            raise InvalidSlide("slide parameter t=%r outside [0, 1/2)" % (self.t,))
        if v == "uniform" and self.t != 0.0:
            raise InvalidSlide("uniform scheme requires t=0, got %r" % (self.t,))


def midpoint_subdivide(tet, scheme: SlideScheme = SlideScheme()) -> TetMesh:
    """Split a tetrahedron into 4 corner tets plus 4 tets from the central
    octahedron, optionally sliding the four free midpoints."""
    P = np.asarray(tet, float)
    m = {}
    for i, j in itertools.combinations(range(4), 2):
        m[(i, j)] = 0.5 * (P[i] + P[j])
    if scheme.variant != "uniform" and scheme.t > 0.0:
        for (i, j), tgt in _SLIDE_TARGETS[scheme.variant].items():
            oth = j if tgt == i else i
            m[(i, j)] = (0.5 + scheme.t) * P[tgt] + (0.5 - scheme.t) * P[oth]
    mid = {k: 4 + n for n, k in enumerate(_MID_KEYS)}
    verts = np.vstack([P] + [m[k] for k in _MID_KEYS])

    def M(i, j):
        return mid[(min(i, j), max(i, j))]

    tets = []
    for i in range(4):
        rest = [j for j in range(4) if j != i]
        tets.append([i, M(i, rest[0]), M(i, rest[1]), M(i, rest[2])])
    eq = [M(0, 2), M(0, 3), M(1, 3), M(1, 2)]
    d0, d1 = M(0, 1), M(2, 3)
    for n in range(4):
        tets.append([d0, d1, eq[n], eq[(n + 1) % 4]])
    return TetMesh(verts, np.array(tets))


@dataclass
class SlideScan:
    variant: str
    t_values: np.ndarray
    min_h_over_r: np.ndarray
    max_face_angle_deg: np.ndarray
    best_t: float = None
    best_is_cwc: bool = False


def scan_slide_parameter(tet, variant, t_values=None) -> SlideScan:
    """Evaluate the 8-tet mesh over a grid of slide parameters and pick the
    best t: the argmax of min h/R among completely well-centered candidates
    (strict h/R > 0 and all face angles < 90), smallest t on ties.  Falls
    back to the unrestricted argmax when no candidate is completely
    well-centered."""
    if t_values is None:
        t_values = np.arange(1, 51) * 0.005  # (0, 0.25] in steps of 0.005
    t_values = np.asarray(t_values, float)
    hr = np.empty(len(t_values))
    fa = np.empty(len(t_values))
    for n, t in enumerate(t_values):
        mesh = midpoint_subdivide(tet, SlideScheme(variant, float(t)))
        _, _, h_over_r, face_deg, _, _, _ = kernels.quality_arrays(mesh.tet_coords())
        hr[n] = h_over_r.min()
        fa[n] = face_deg.max()
    cwc = (hr > 0.0) & (fa < 90.0)
    if cwc.any():
        masked = np.where(cwc, hr, -np.inf)
        best = int(np.argmax(masked))  # first max = smallest t
        return SlideScan(variant, t_values, hr, fa, float(t_values[best]), True)
    best = int(np.argmax(hr))
    return SlideScan(variant, t_values, hr, fa, float(t_values[best]), False)


@dataclass(frozen=True)
class Subdiv49Params:
    """s_center scales the central tet about the centroid; s_corner is the
    corner cut fraction along each edge; diagonal picks the split of the
    twelve edge octahedra ('kc' joins a corner-cut vertex to a central
    vertex, 'ff' joins the two face centers)."""

    s_center: float = 0.3
    s_corner: float = 0.2
    diagonal: str = "kc"

    def __post_init__(self):
        if not (0.0 < self.s_center < 1.0):
            raise InvalidParams("s_center must be in (0,1), got %r" % (self.s_center,))
        if not (0.0 < self.s_corner < 0.5):
            raise InvalidParams("s_corner must be in (0,1/2), got %r" % (self.s_corner,))
        if self.diagonal not in ("kc", "ff"):
            raise InvalidParams("diagonal must be 'kc' or 'ff', got %r" % (self.diagonal,))


def _build_49(P, params: Subdiv49Params):
    """Vertex layout: 0-3 parent corners, 4-7 central tet, 8-11 face
    centers (vertex 8+i on the face opposite corner i), 12-23 corner-cut
    vertices K(i,j) at fraction s_corner from corner i toward corner j,
    ordered pairs lexicographic."""
    g = P.mean(axis=0)
    C = g + params.s_center * (P - g)
    F = np.array([P[[j for j in range(4) if j != i]].mean(axis=0) for i in range(4)])
    K = {}
    verts = [*P, *C, *F]
    for i in range(4):
        for j in range(4):
            if i != j:
                K[(i, j)] = len(verts)
                verts.append(P[i] + params.s_corner * (P[j] - P[i]))

    def Ci(i):
        return 4 + i

    def Fi(i):
        return 8 + i

    tets = [[Ci(0), Ci(1), Ci(2), Ci(3)]]
    for i in range(4):
        rest = [j for j in range(4) if j != i]
        tets.append([Ci(rest[0]), Ci(rest[1]), Ci(rest[2]), Fi(i)])
    for i in range(4):
        rest = [j for j in range(4) if j != i]
        ks = [K[(i, j)] for j in rest]
        tets.append([i, *ks])
        tets.append([*ks, Ci(i)])
    for l in range(4):
        face = [v for v in range(4) if v != l]
        for i in face:
            j, k = [v for v in face if v != i]
            tets.append([Fi(l), K[(i, j)], K[(i, k)], Ci(i)])
    for i, j in itertools.combinations(range(4), 2):
        k, l = [v for v in range(4) if v not in (i, j)]
        if params.diagonal == "ff":
            a, b = Fi(k), Fi(l)
            ring = [K[(i, j)], Ci(i), Ci(j), K[(j, i)]]
        else:
            a, b = K[(i, j)], Ci(j)
            ring = [K[(j, i)], Fi(k), Ci(i), Fi(l)]
        for n in range(4):
            tets.append([a, b, ring[n], ring[(n + 1) % 4]])
    return np.array(verts), np.array(tets)


def subdivide_49(params: Subdiv49Params = Subdiv49Params(), tet=None) -> TetMesh:
    """49-tet subdivision: central tet, four face cones, four corner cuts
    with cones to the central vertices, twelve corner-adjacent tets, and
    four tets per parent edge filling the edge octahedra."""
    P = REGULAR_TET.copy() if tet is None else np.asarray(tet, float)
    verts, tets = _build_49(P, params)
    T = verts[tets]
    vols = np.abs(np.linalg.det(T[:, 1:] - T[:, :1])) / 6.0
    scale = float(np.abs(T).max())
    parent_vol = abs(np.linalg.det(P[1:] - P[0])) / 6.0
    # an inverted cell double-counts volume, so a partition sums exactly
    if np.any(vols <= 1e-12 * max(scale, 1.0) ** 3) \
            or abs(vols.sum() - parent_vol) > 1e-9 * parent_vol:
        raise InvalidParams("parameters cause geometric interference "
                            "(collapsed or overlapping cells)")
    return TetMesh(verts, tets)


def subdivision_constraints(tet=None) -> dict:
    """Boundary-preserving constraint map for the 49-tet vertex layout:
    central vertices free, face centers confined to their parent face
    plane, corner-cut vertices confined to their parent edge."""
    P = REGULAR_TET.copy() if tet is None else np.asarray(tet, float)
    cons = {}
    for i in range(4, 8):
        cons[i] = ("free",)
    for i in range(4):
        face = [v for v in range(4) if v != i]
        a, b, c = P[face]
        nrm = np.cross(b - a, c - a)
        nrm = nrm / np.linalg.norm(nrm)
        cons[8 + i] = ("plane", a.copy(), nrm)
    kid = 12
    for i in range(4):
        for j in range(4):
            if i != j:
                cons[kid] = ("segment", P[i].copy(), P[j].copy())
                kid += 1
    return cons


def subdivide_49_well_centered(seed_params: Subdiv49Params = None, tet=None,
                               target: float = 0.005, max_cycles: int = 4):
    """Completely well-centered 49-tet subdivision via optimization.

    Builds a seed subdivision, runs the maximin search, then alternates
    annealed smooth polishing with further maximin sweeps until the
    complete-well-centeredness margin exceeds `target`.  Returns
    (mesh, trace of the final maximin pass).  The seed parameters were
    picked for the optimizer basin and differ from the subdivide_49
    defaults on purpose.
    """
    if seed_params is None:
        seed_params = Subdiv49Params(s_center=0.18, s_corner=0.375)
    P = REGULAR_TET.copy() if tet is None else np.asarray(tet, float)
    mesh = subdivide_49(seed_params, P)
    cons = subdivision_constraints(P)
    spec = OptimizeSpec(free_vertices=tuple(sorted(cons)), objective="cwc",
                        max_iters=600, step_init=0.2, constraints=cons)
    mesh, trace = optimize(mesh, spec)
    for _ in range(max_cycles):
        if trace.objective[-1] > target:
            break
        polished = softmin_polish(mesh.vertices, mesh.tets, cons)
        mesh = mesh.with_vertices(polished)
        spec = OptimizeSpec(free_vertices=tuple(sorted(cons)), objective="cwc",
                            max_iters=400, step_init=0.05, constraints=cons)
        mesh, trace = optimize(mesh, spec)
    return mesh, trace


def cube_corner_tet(scales=(1.0, 1.0, 1.0)):
    """Tetrahedron with three mutually orthogonal faces meeting at the
    origin corner, one vertex per (scaled) axis."""
    sx, sy, sz = scales
    if not (sx > 0 and sy > 0 and sz > 0):
        raise InvalidParams("axis scales must be positive")
    return np.array([(0.0, 0.0, 0.0),
                     (sx, 0.0, 0.0),
                     (0.0, sy, 0.0),
                     (0.0, 0.0, sz)])


def cube_corner_is_not_3wc(n: int = 2000, seed: int = 0) -> bool:
    """Check that no scaled/rotated cube-corner tet is 3-well-centered."""
    rng = np.random.default_rng(seed)
    T = np.empty((n, 4, 3))
    for k in range(n):
        t = cube_corner_tet(rng.uniform(0.2, 5.0, 3))
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        if np.linalg.det(q) < 0:
            q[:, 0] = -q[:, 0]
        T[k] = t @ q.T
    _, _, h_over_r, _, _, _, _ = kernels.quality_arrays(T)
    return bool(np.all(h_over_r.min(axis=1) <= 0.0))
