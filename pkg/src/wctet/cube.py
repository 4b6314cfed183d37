"""Unit-cube meshing pipeline: fixed surface layout, interior seeds,
Delaunay connectivity, and interior-vertex optimization.

Surface layout on [0,1]^3: every face carries its 4 cube corners, 4 edge
midpoints, two vertices at 0.35/0.65 along the diagonal joining the face's
two marked corners, and two at 0.295/0.705 along the other diagonal.  The
marked corners are the regular-tetrahedron orbit {(0,0,0), (1,1,0),
(1,0,1), (0,1,1)}; all six faces match under rotation/reflection.  Total:
8 corners + 12 midpoints + 24 diagonal vertices = 44 surface points.

Interior seeding defaults to the cube center plus three seeds per marked
corner, each placed on the corner's diagonal plane.  The optimizer may not
reach complete well-centeredness from a given seeding; the result reports
what was achieved rather than asserting it.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .delaunay import delaunay3d
from .errors import InvalidParams, NotConforming, WctetError
from .mesh import QualityReport, TetMesh, is_conforming, is_delaunay, mesh_quality
from .optimize import OptimizeSpec, objective_value, optimize, softmin_polish

MARKED_CORNERS = np.array([(0.0, 0.0, 0.0),
                           (1.0, 1.0, 0.0),
                           (1.0, 0.0, 1.0),
                           (0.0, 1.0, 1.0)])


def cube_surface_points():
    """The 44-point surface layout, deduplicated and lexicographically
    sorted.  Uses exactly the constants 0, 0.5, 1, 0.35, 0.65, 0.295,
    0.705."""
    pts = [c for c in itertools.product((0.0, 1.0), repeat=3)]
    for ax in range(3):
        for o1, o2 in itertools.product((0.0, 1.0), repeat=2):
            p = [0.0, 0.0, 0.0]
            p[ax] = 0.5
            p[(ax + 1) % 3] = o1
            p[(ax + 2) % 3] = o2
            pts.append(tuple(p))

    def marked(p):
        return any(np.array_equal(p, m) for m in MARKED_CORNERS)

    for ax in range(3):
        for val in (0.0, 1.0):
            u, w = (ax + 1) % 3, (ax + 2) % 3
            corners = []
            for cu, cw in itertools.product((0.0, 1.0), repeat=2):
                c = np.zeros(3)
                c[ax] = val
                c[u] = cu
                c[w] = cw
                corners.append(c)
            d1 = [c for c in corners if c[u] == c[w]]
            d2 = [c for c in corners if c[u] != c[w]]
            main = d1 if (marked(d1[0]) and marked(d1[1])) else d2
            anti = d2 if main is d1 else d1
            for t, pair in ((0.35, main), (0.65, main), (0.295, anti), (0.705, anti)):
                p = (1.0 - t) * pair[0] + t * pair[1]
                pts.append(tuple(np.round(p, 12)))
    return np.array(sorted(set(map(tuple, pts))))


def default_interior_seeds(depth: float = 0.35, spread: float = 0.175):
    """Cube center plus three seeds per marked corner.

    Each corner's triple sits at the axis permutations of (depth, spread,
    spread) measured inward from the corner, which puts all three on the
    corner's diagonal plane."""
    out = [(0.5, 0.5, 0.5)]
    base = [(depth, spread, spread), (spread, depth, spread), (spread, spread, depth)]
    for c in MARKED_CORNERS:
        for s in base:
            out.append(tuple(c[k] + (1.0 - 2.0 * c[k]) * s[k] for k in range(3)))
    return np.array(out)


@dataclass
class CubePipelineResult:
    mesh: TetMesh
    report: QualityReport
    achieved_complete_wc: bool
    tet_count: int


def cube_pipeline(interior_seeds=None, optimize_spec: OptimizeSpec = None,
                  rounds: int = 5, scale: float = 1.0) -> CubePipelineResult:
    """Delaunay mesh of surface + interior points, then interior-only
    optimization with connectivity refreshed between rounds.

    Each round re-triangulates at the current positions, stops early on
    complete well-centeredness or a stalled objective, and otherwise runs
    a maximin pass followed by a smoothed polish.  Optimization happens in
    the unit cube and `scale` is applied to the result, so quality ratios
    and angles do not depend on it.  The returned mesh is the Delaunay
    triangulation at the best positions found; conformity, Delaunayness,
    covered volume, and surface fixity are re-verified.
    """
    if not scale > 0.0:
        raise InvalidParams("scale must be positive")
    surface = cube_surface_points()
    ns = len(surface)
    if interior_seeds is None:
        interior_seeds = default_interior_seeds()
    seeds = np.asarray(interior_seeds, float)
    if seeds.ndim != 2 or seeds.shape[1] != 3:
        raise InvalidParams("interior_seeds must be (n, 3)")
    if not ((seeds > 0.0) & (seeds < 1.0)).all():
        raise InvalidParams("interior seeds must lie strictly inside the cube")
    if not (np.abs(seeds - 0.5).max(axis=1) < 1e-12).any():
        raise InvalidParams("interior seeds must include the cube center")

    pts = np.vstack([surface, seeds])
    free = tuple(range(ns, len(pts)))
    if optimize_spec is None:
        optimize_spec = OptimizeSpec(free_vertices=free, objective="cwc",
                                     max_iters=40, step_init=0.12)
    else:
        optimize_spec = OptimizeSpec(free_vertices=free,
                                     objective=optimize_spec.objective,
                                     max_iters=optimize_spec.max_iters,
                                     step_init=optimize_spec.step_init,
                                     tol=optimize_spec.tol,
                                     seed=optimize_spec.seed)
    cons = {v: ("free",) for v in free}

    best_obj, best_pts = -np.inf, pts.copy()
    prev_obj = -np.inf
    for _ in range(max(1, rounds)):
        mesh = delaunay3d(pts)
        obj = objective_value(mesh, optimize_spec)
        if obj > best_obj:
            best_obj, best_pts = obj, pts.copy()
        if obj > 0.0:
            break
        if obj <= prev_obj + 1e-9 and prev_obj > -np.inf:
            break
        prev_obj = obj
        mesh, _ = optimize(mesh, optimize_spec)
        pts = softmin_polish(mesh.vertices, mesh.tets, cons,
                             betas=(60.0, 200.0, 600.0, 2000.0),
                             iters=120, step0=0.02, h=1e-6)

    final = delaunay3d(best_pts * scale)
    diag = is_conforming(final)
    if not diag:
        raise NotConforming(diag.reason)
    if not is_delaunay(final):
        raise WctetError("pipeline output failed the Delaunay check")
    vol = final.volume()
    if abs(vol - scale ** 3) > 1e-9 * scale ** 3:
        raise WctetError("pipeline output volume %r does not cover the cube" % (vol,))
    if not np.array_equal(final.vertices[:ns], surface * scale):
        raise WctetError("surface vertices moved")
    report = mesh_quality(final)
    return CubePipelineResult(final, report, bool(report.completely_wc),
                              report.n_tets)
