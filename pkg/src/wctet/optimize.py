"""Maximin vertex-position optimization over fixed connectivity.

The driver is a deterministic coordinate-descent pattern search: vertices
are visited in index order, each gets a central-difference ascent direction
of its local (incident-tet) worst value plus a fixed probe set, and a
backtracking line search accepts the first strictly improving, non-inverting
move.  A strict local improvement can never decrease the global minimum,
so the accepted objective trace is non-decreasing by construction.

A smoothed variant (softmin_polish) ascends an annealed log-sum-exp
underestimate of the same per-facet margins with a full gradient over all
free degrees of freedom at once.  The pattern search stalls where only
coordinated multi-vertex moves improve (several worst tets in balance, or
a symmetric saddle like the uniform midpoint subdivision); optimize()
therefore falls back to one smoothed pass when a whole sweep accepts no
move, adopting the result only if it strictly improves the true minimum,
which keeps the accepted trace monotone.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DegenerateTet, InvalidParams, NotConforming
from .mesh import TetMesh, is_conforming

_MODES = {"minhr": 1, "min_hr": 1, "cwc": 0, "completewc": 0}

# probe directions: coordinate axes and cube diagonals
_DIRS = []
for _d in range(3):
    _e = np.zeros(3)
    _e[_d] = 1.0
    _DIRS += [_e, -_e]
for _s in itertools.product((-1.0, 1.0), repeat=3):
    _DIRS.append(np.array(_s) / np.sqrt(3.0))
_DIRS = np.array(_DIRS)


def _mode_code(objective):
    try:
        return _MODES[str(objective).lower()]
    except KeyError:
        raise InvalidParams("unknown objective %r (use 'minhr' or 'cwc')" % (objective,))


@dataclass(frozen=True)
class OptimizeSpec:
    """Controls for optimize().

    free_vertices move; everything else is pinned.  constraints maps a free
    vertex id to ('free',), ('plane', point, normal), or
    ('segment', a, b); unmapped free vertices are unconstrained.
    step_init is a fraction of the shortest incident edge.  tol, when set,
    stops the search once the objective reaches it.  seed is accepted for
    interface stability; the search itself is deterministic.
    """

    free_vertices: tuple = ()
    objective: str = "cwc"
    max_iters: int = 200
    step_init: float = 0.1
    tol: float = None
    seed: int = 0
    constraints: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "free_vertices",
                           tuple(int(v) for v in self.free_vertices))
        _mode_code(self.objective)
        if self.max_iters < 1:
            raise InvalidParams("max_iters must be >= 1")
        if not self.step_init > 0.0:
            raise InvalidParams("step_init must be positive")
        unknown = set(self.constraints) - set(self.free_vertices)
        if unknown:
            raise InvalidParams("constraints given for non-free vertices %s"
                                % sorted(unknown))
        for vid, con in self.constraints.items():
            if con[0] not in ("free", "plane", "segment"):
                raise InvalidParams("unknown constraint kind %r for vertex %d"
                                    % (con[0], vid))


@dataclass
class OptimizeTrace:
    """Per-sweep records; row 0 is the input mesh."""

    objective: np.ndarray
    min_h_over_r: np.ndarray
    max_face_angle_deg: np.ndarray
    termination: str = ""
    moves: int = 0

    @property
    def sweeps(self):
        return len(self.objective) - 1


def _project_dir(gc, con):
    if con[0] == "plane":
        n = np.asarray(con[2], float)
        n = n / np.linalg.norm(n)
        return gc - np.dot(gc, n) * n
    if con[0] == "segment":
        d = np.asarray(con[2], float) - np.asarray(con[1], float)
        d = d / np.linalg.norm(d)
        return np.dot(gc, d) * d
    return gc


def _project_point(p, con):
    if con[0] == "plane":
        a = np.asarray(con[1], float)
        n = np.asarray(con[2], float)
        n = n / np.linalg.norm(n)
        return p - np.dot(p - a, n) * n
    if con[0] == "segment":
        a = np.asarray(con[1], float)
        b = np.asarray(con[2], float)
        d = b - a
        t = np.clip(np.dot(p - a, d) / np.dot(d, d), 1e-6, 1.0 - 1e-6)
        return a + t * d
    return p


def objective_value(m: TetMesh, spec: OptimizeSpec) -> float:
    """Minimum per-tet objective: 'minhr' is the worst h/R over all facets,
    'cwc' is min(worst h/R, worst (90-angle)/90) so positivity means
    completely well-centered."""
    T = m.tet_coords()
    scale = float(np.abs(T).max())
    vols6 = np.linalg.det(T[:, 1:] - T[:, :1])
    if np.any(np.abs(vols6) <= 1e-12 * max(scale, 1.0) ** 3):
        raise DegenerateTet("degenerate tet in objective evaluation")
    return float(kernels.min_objective(T, _mode_code(spec.objective)))


def optimize(m: TetMesh, spec: OptimizeSpec):
    """Move spec.free_vertices to maximize the minimum per-tet objective.

    Returns (mesh, trace).  Connectivity is unchanged, fixed vertices keep
    their exact bits, and no accepted move inverts a tet.
    """
    diag = is_conforming(m)
    if not diag:
        raise NotConforming(diag.reason)
    if not spec.free_vertices:
        raise InvalidParams("free_vertices is empty")
    if max(spec.free_vertices) >= m.n_vertices or min(spec.free_vertices) < 0:
        raise InvalidParams("free vertex id out of range")

    mode = _mode_code(spec.objective)
    verts = m.vertices.copy()
    verts.setflags(write=True)
    tets = m.tets
    n = m.n_vertices
    free_ids = sorted(set(spec.free_vertices))
    cons = {vid: spec.constraints.get(vid, ("free",)) for vid in free_ids}
    for vid in free_ids:
        verts[vid] = _project_point(verts[vid], cons[vid])

    inc = [[] for _ in range(n)]
    for ti, t in enumerate(tets):
        for v in t:
            inc[v].append(ti)
    inc = {vid: np.array(inc[vid]) for vid in free_ids}
    slots = {vid: (tets[inc[vid]] == vid) for vid in free_ids}
    sgn_all = np.ones(len(tets))

    per_tet = kernels.per_tet_objective(verts[tets], mode)

    def snapshot():
        _, _, h_over_r, face_deg, _, _, _ = kernels.quality_arrays(verts[tets])
        return float(h_over_r.min()), float(face_deg.max())

    obj = float(per_tet.min())
    hr0, fa0 = snapshot()
    tr_obj, tr_hr, tr_face = [obj], [hr0], [fa0]
    moves = 0
    termination = "max_iters"
    if spec.tol is not None and obj >= spec.tol:
        termination = "tol"
    else:
        stall = 0
        rescues = 0
        for _sweep in range(spec.max_iters):
            sweep_moves = 0
            for vid in free_ids:
                con = cons[vid]
                slot = slots[vid]
                base = verts[tets[inc[vid]]]
                sg = sgn_all[inc[vid]]
                cur = per_tet[inc[vid]].min()
                d2v = np.linalg.norm(base - verts[vid][None, None, :], axis=2)
                elen = float(d2v[~slot].min())
                h = 1e-6 * elen
                p0 = verts[vid].copy()

                def at(p):
                    X = base.copy()
                    X[slot] = p
                    return X

                g = np.zeros(3)
                for d in range(3):
                    e = np.zeros(3)
                    e[d] = h
                    g[d] = (kernels.min_objective(at(p0 + e), mode)
                            - kernels.min_objective(at(p0 - e), mode)) / (2.0 * h)
                moved = False
                for gc in [g] + list(_DIRS):
                    gc = _project_dir(np.asarray(gc, float), con)
                    gn = np.linalg.norm(gc)
                    if gn < 1e-14:
                        continue
                    gc = gc / gn
                    step = spec.step_init * elen
                    while step > 1e-9 * elen:
                        p1 = _project_point(p0 + step * gc, con)
                        X = at(p1)
                        if kernels.volume_signs_ok(X, sg):
                            nl = kernels.min_objective(X, mode)
                            if nl > cur + 1e-15:
                                verts[vid] = p1
                                per_tet[inc[vid]] = kernels.per_tet_objective(X, mode)
                                moves += 1
                                sweep_moves += 1
                                moved = True
                                break
                        step *= 0.5
                    if moved:
                        break
            newobj = float(per_tet.min())
            hr, fa = snapshot()
            tr_obj.append(newobj)
            tr_hr.append(hr)
            tr_face.append(fa)
            if newobj > obj + 1e-12:
                obj = newobj
                stall = 0
            else:
                stall += 1
            if spec.tol is not None and newobj >= spec.tol:
                termination = "tol"
                break
            if sweep_moves == 0:
                # a moveless sweep would repeat itself; try one smoothed
                # pass over all free dof, keep it only on true improvement
                adopted = False
                if rescues < 2:
                    rescues += 1
                    cand = softmin_polish(verts, tets, cons)
                    cobj = float(kernels.min_objective(cand[tets], mode))
                    if kernels.volume_signs_ok(cand[tets], sgn_all) \
                            and cobj > newobj + 1e-15:
                        verts = cand
                        per_tet = kernels.per_tet_objective(verts[tets], mode)
                        obj = cobj
                        hr, fa = snapshot()
                        tr_obj.append(cobj)
                        tr_hr.append(hr)
                        tr_face.append(fa)
                        stall = 0
                        adopted = True
                if not adopted:
                    termination = "plateau"
                    break
                if spec.tol is not None and obj >= spec.tol:
                    termination = "tol"
                    break
                continue
            if stall >= 3:
                termination = "plateau"
                break

    trace = OptimizeTrace(np.array(tr_obj), np.array(tr_hr), np.array(tr_face),
                          termination, moves)
    out = m.with_vertices(verts)
    return out, trace


def _dof_layout(verts, constraints):
    """(vid, kind, frame, slice) rows mapping the packed dof vector x to
    vertex positions."""
    rows = []
    ofs = 0
    for vid in sorted(constraints):
        con = constraints[vid]
        if con[0] == "free":
            rows.append((vid, "free", None, slice(ofs, ofs + 3)))
            ofs += 3
        elif con[0] == "plane":
            a = np.asarray(con[1], float)
            n = np.asarray(con[2], float)
            n = n / np.linalg.norm(n)
            e1 = np.cross(n, [1.0, 0.0, 0.0])
            if np.linalg.norm(e1) < 1e-8:
                e1 = np.cross(n, [0.0, 1.0, 0.0])
            e1 = e1 / np.linalg.norm(e1)
            e2 = np.cross(n, e1)
            rows.append((vid, "plane", (a, e1, e2), slice(ofs, ofs + 2)))
            ofs += 2
        elif con[0] == "segment":
            a = np.asarray(con[1], float)
            b = np.asarray(con[2], float)
            rows.append((vid, "segment", (a, b), slice(ofs, ofs + 1)))
            ofs += 1
        else:
            raise InvalidParams("unknown constraint kind %r" % (con[0],))
    return rows, ofs


def _pack(verts, rows, ndof):
    x = np.zeros(ndof)
    for vid, kind, frame, sl in rows:
        p = verts[vid]
        if kind == "free":
            x[sl] = p
        elif kind == "plane":
            a, e1, e2 = frame
            x[sl] = [np.dot(p - a, e1), np.dot(p - a, e2)]
        else:
            a, b = frame
            d = b - a
            x[sl] = np.clip(np.dot(p - a, d) / np.dot(d, d), 1e-4, 1.0 - 1e-4)
    return x


def _unpack(x, verts, rows):
    out = verts.copy()
    for vid, kind, frame, sl in rows:
        if kind == "free":
            out[vid] = x[sl]
        elif kind == "plane":
            a, e1, e2 = frame
            out[vid] = a + x[sl][0] * e1 + x[sl][1] * e2
        else:
            a, b = frame
            t = float(np.clip(x[sl][0], 1e-4, 1.0 - 1e-4))
            out[vid] = a + t * (b - a)
    return out


def _softmin(vals, beta):
    mn = vals.min()
    return mn - np.log(np.exp(-beta * (vals - mn)).sum()) / beta


def softmin_polish(verts, tets, constraints, betas=(300.0, 1000.0, 3000.0),
                   iters=300, step0=0.02, h=1e-7):
    """Smoothed full-gradient ascent of the well-centeredness margins.

    Maximizes softmin over every per-tet margin (4 h/R values and 12 scaled
    face-angle complements) with an annealing schedule over betas.  Steps
    that invert a tet or lower the smooth objective are rejected by halving;
    accepted steps let the step grow back toward step0.  Returns updated
    vertex coordinates; constrained vertices stay on their plane/segment.
    """
    verts = np.asarray(verts, float).copy()
    tets = np.asarray(tets)
    rows, ndof = _dof_layout(verts, constraints)
    if ndof == 0:
        return verts
    sgn = np.ones(len(tets))
    x = _pack(verts, rows, ndof)

    def f(xv, beta):
        V = _unpack(xv, verts, rows)
        T = V[tets]
        if not kernels.volume_signs_ok(T, sgn):
            return -1e9
        return _softmin(kernels.wc_margins(T), beta)

    for beta in betas:
        step = step0
        cur = f(x, beta)
        for _ in range(iters):
            g = np.zeros(ndof)
            for d in range(ndof):
                e = np.zeros(ndof)
                e[d] = h
                g[d] = (f(x + e, beta) - f(x - e, beta)) / (2.0 * h)
            gn = np.linalg.norm(g)
            if gn < 1e-12:
                break
            g = g / gn
            s = step
            ok = False
            while s > 1e-13:
                nx = x + s * g
                nv = f(nx, beta)
                if nv > cur:
                    x, cur = nx, nv
                    step = min(s * 1.5, step0)
                    ok = True
                    break
                s *= 0.5
            if not ok:
                break
    return _unpack(x, verts, rows)
